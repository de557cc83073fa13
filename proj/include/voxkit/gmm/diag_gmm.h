// include/voxkit/gmm/diag_gmm.h

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

#ifndef VOXKIT_GMM_DIAG_GMM_H_
#define VOXKIT_GMM_DIAG_GMM_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "voxkit/audio/features.h"
#include "voxkit/common.h"

namespace voxkit::gmm {

// Frames are passed as D x T matrices, one frame per column (the layout of
// MfccFrames::coeffs).

struct DiagonalGmm {
  Vector weights;    // [K]
  Matrix means;      // [K x D]
  Matrix variances;  // [K x D]

  int NumComponents() const { return static_cast<int>(weights.size()); }
  int Dim() const { return static_cast<int>(means.cols()); }
  /// Throws kModelMismatch on inconsistent sizes, negative weights or
  /// non-positive variances.
  void Validate() const;
};

struct UbmOptions {
  int components = 64;
  int iters = 10;
  uint64_t seed = 42;
  /// k-means++ seeding runs on at most this many randomly chosen frames.
  size_t init_frames = 100000;
  /// Per-dimension variance floor as a fraction of the global variance.
  double floor_scale = 1e-4;
};

struct UbmResult {
  DiagonalGmm gmm;
  /// Total log-likelihood of the training frames under the model entering
  /// each EM iteration, plus the final model: iters + 1 values.
  std::vector<double> log_likelihood;
  Vector variance_floor;
};

/// k-means++ seeding, one Lloyd pass, then EM.  Throws kInsufficientData
/// when there are fewer frames than components.
UbmResult TrainUbm(const std::vector<Matrix> &features, const UbmOptions &opts);
DiagonalGmm TrainUbm(const std::vector<MfccFrames> &features, int k, int iters, uint64_t seed = 42);

/// log(w_k) + log N(x_t; mu_k, var_k) as a K x T matrix.
Matrix ComponentLogLikelihoods(const DiagonalGmm &gmm, const Matrix &frames);
/// Responsibilities (K x T, columns sum to one) and the per-frame
/// log-likelihoods.
Matrix Posteriors(const DiagonalGmm &gmm, const Matrix &frames, Vector *frame_ll = nullptr);

/// Mean per-frame log-likelihood.  Throws kModelMismatch on a dimension
/// mismatch.
double LogLikelihood(const DiagonalGmm &gmm, const Matrix &frames);
double LogLikelihood(const DiagonalGmm &gmm, const MfccFrames &frames);

/// Means-only MAP adaptation: mu'_k = (F_k + r mu_k) / (N_k + r).
DiagonalGmm MapAdapt(const DiagonalGmm &ubm, const Matrix &frames, double relevance = 16.0);
DiagonalGmm MapAdapt(const DiagonalGmm &ubm, const MfccFrames &frames, double relevance = 16.0);

/// Mean per-frame log-likelihood ratio of speaker model against the UBM.
double GmmUbmScore(const DiagonalGmm &ubm, const DiagonalGmm &speaker, const Matrix &frames);
double GmmUbmScore(const DiagonalGmm &ubm, const DiagonalGmm &speaker, const MfccFrames &frames);

void WriteGmm(std::ostream &os, const DiagonalGmm &gmm);
DiagonalGmm ReadGmm(std::istream &is);
void SaveGmm(const std::string &path, const DiagonalGmm &gmm);
DiagonalGmm LoadGmm(const std::string &path);

}  // namespace voxkit::gmm

#endif  // VOXKIT_GMM_DIAG_GMM_H_
