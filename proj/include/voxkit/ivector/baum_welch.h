// include/voxkit/ivector/baum_welch.h

// Copyright 2026  The voxkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef VOXKIT_IVECTOR_BAUM_WELCH_H_
#define VOXKIT_IVECTOR_BAUM_WELCH_H_

#include <vector>

#include "voxkit/gmm/diag_gmm.h"

namespace voxkit::ivector {

/// Zeroth-order occupancies and first-order sums centred on the UBM means.
struct BaumWelchStats {
  Vector n;  // [K]
  Matrix f;  // [K x D], f_k = sum_t gamma_kt (x_t - mu_k)

  double FrameCount() const { return n.sum(); }
};

/// Throws kModelMismatch when the frame dimension differs from the UBM's.
BaumWelchStats AccumulateStats(const gmm::DiagonalGmm &ubm, const Matrix &frames);
BaumWelchStats AccumulateStats(const gmm::DiagonalGmm &ubm, const MfccFrames &frames);

/// One set of statistics per utterance, computed in parallel.
std::vector<BaumWelchStats> AccumulateStatsBatch(const gmm::DiagonalGmm &ubm,
                                                 const std::vector<Matrix> &utterances);

}  // namespace voxkit::ivector

#endif  // VOXKIT_IVECTOR_BAUM_WELCH_H_
