// src/ivector/baum_welch.cc

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

#include "voxkit/ivector/baum_welch.h"

namespace voxkit::ivector {

BaumWelchStats AccumulateStats(const gmm::DiagonalGmm &ubm, const Matrix &frames) {
  BaumWelchStats s;
  const int k = ubm.NumComponents();
  if (frames.rows() != ubm.Dim())
    Fail(ErrorKind::kModelMismatch, "frame dimension does not match the UBM");
  if (frames.cols() == 0) {
    s.n = Vector::Zero(k);
    s.f = Matrix::Zero(k, ubm.Dim());
    return s;
  }
  const Matrix post = gmm::Posteriors(ubm, frames);
  s.n = post.rowwise().sum();
  s.f = post * frames.transpose();
  s.f -= ubm.means.cwiseProduct(s.n.replicate(1, ubm.Dim()));
  return s;
}

BaumWelchStats AccumulateStats(const gmm::DiagonalGmm &ubm, const MfccFrames &frames) {
  return AccumulateStats(ubm, frames.coeffs);
}

std::vector<BaumWelchStats> AccumulateStatsBatch(const gmm::DiagonalGmm &ubm,
                                                 const std::vector<Matrix> &utterances) {
  std::vector<BaumWelchStats> out(utterances.size());
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
  for (size_t i = 0; i < utterances.size(); ++i) {
    try {
      out[i] = AccumulateStats(ubm, utterances[i]);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace voxkit::ivector
