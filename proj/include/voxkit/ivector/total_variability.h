// include/voxkit/ivector/total_variability.h

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

#ifndef VOXKIT_IVECTOR_TOTAL_VARIABILITY_H_
#define VOXKIT_IVECTOR_TOTAL_VARIABILITY_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "voxkit/ivector/baum_welch.h"

namespace voxkit::ivector {

/// Supervector rows are ordered component-major: row k * D + d.
struct TotalVariabilityModel {
  Matrix t;          // [K*D x R]
  Matrix variances;  // [K x D], UBM covariances the model was trained against

  int NumComponents() const { return static_cast<int>(variances.rows()); }
  int Dim() const { return static_cast<int>(variances.cols()); }
  int Rank() const { return static_cast<int>(t.cols()); }
};

struct TvOptions {
  int rank = 400;
  int iters = 5;
  uint64_t seed = 42;
};

struct TvResult {
  TotalVariabilityModel model;
  /// sum_u [ b'L^-1 b / 2 - log|L| / 2 ] for the model entering each
  /// iteration, plus the final model: iters + 1 values.
  std::vector<double> objective;
};

/// EM estimate of T from a random N(0, 0.01) start.  Throws
/// kInsufficientData with fewer utterances than the rank.
TvResult TrainTotalVariability(const gmm::DiagonalGmm &ubm, const std::vector<BaumWelchStats> &stats,
                               const TvOptions &opts);
TotalVariabilityModel TrainTotalVariability(const gmm::DiagonalGmm &ubm,
                                            const std::vector<BaumWelchStats> &stats, int rank,
                                            int iters, uint64_t seed);

/// Posterior precision L = I + sum_k n_k T_k' S_k^-1 T_k.
Matrix PosteriorPrecision(const TotalVariabilityModel &model, const BaumWelchStats &stats);
/// Posterior mean w = L^-1 T' S^-1 f.  Throws kModelMismatch when the
/// statistics do not match the model's K and D.
Vector ExtractIvector(const TotalVariabilityModel &model, const BaumWelchStats &stats);
std::vector<Vector> ExtractIvectors(const TotalVariabilityModel &model,
                                    const std::vector<BaumWelchStats> &stats);

void WriteTv(std::ostream &os, const TotalVariabilityModel &model);
TotalVariabilityModel ReadTv(std::istream &is);
void SaveTv(const std::string &path, const TotalVariabilityModel &model);
TotalVariabilityModel LoadTv(const std::string &path);

}  // namespace voxkit::ivector

#endif  // VOXKIT_IVECTOR_TOTAL_VARIABILITY_H_
