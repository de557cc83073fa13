// include/voxkit/ivector/plda.h

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

#ifndef VOXKIT_IVECTOR_PLDA_H_
#define VOXKIT_IVECTOR_PLDA_H_

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "voxkit/common.h"

namespace voxkit::ivector {

struct PldaOptions {
  int out_dim = 200;
  bool length_norm = true;
  /// false keeps the (centred, normalised) input space and ignores out_dim.
  bool lda = true;
  int iters = 10;
};

/// Two-covariance model in the projected space:
///   y ~ N(mean, between_cov),  x | y ~ N(y, within_cov).
class PldaModel {
 public:
  PldaModel() = default;

  bool trained() const { return trained_; }
  int InputDim() const { return static_cast<int>(center_.size()); }
  int OutputDim() const { return static_cast<int>(mean_.size()); }

  const Vector &center() const { return center_; }
  bool length_norm() const { return length_norm_; }
  const Matrix &projection() const { return projection_; }  // [out x in]
  const Vector &mean() const { return mean_; }
  const Matrix &between_cov() const { return between_; }
  const Matrix &within_cov() const { return within_; }

  /// Centre, length-normalise (if enabled) and project.
  Vector Transform(const Vector &x) const;

  /// Builds a model from explicit parameters (scoring cache included).
  static PldaModel FromParameters(Vector center, bool length_norm, Matrix projection, Vector mean,
                                  Matrix between, Matrix within);

 private:
  friend PldaModel TrainPlda(const std::vector<Vector> &, const std::vector<int> &,
                             const PldaOptions &, std::vector<double> *);
  friend double PldaScore(const PldaModel &, const Vector &, const Vector &);
  friend double PldaScoreProjected(const PldaModel &, const Vector &, const Vector &);
  void Finalize();

  bool trained_ = false;
  Vector center_;
  bool length_norm_ = true;
  Matrix projection_;
  Vector mean_;
  Matrix between_, within_;
  // score(a, b) = a'Qa/2 + b'Qb/2 + a'Pb + k for centred projected a, b
  Matrix q_, p_;
  double k_ = 0.0;
};

/// Length normalisation, LDA to out_dim, then EM for the two covariances.
/// Throws kInvalidInput for fewer than two classes or no class with two
/// samples, kInsufficientData when out_dim exceeds the rank of the data.
/// `history` receives the training log-likelihood before each EM step and
/// after the last.
PldaModel TrainPlda(const std::vector<Vector> &ivectors, const std::vector<int> &labels,
                    const PldaOptions &opts = {}, std::vector<double> *history = nullptr);

/// Same/different-speaker log-likelihood ratio of two raw i-vectors.
/// Throws kModelMismatch for an untrained model or a dimension mismatch.
double PldaScore(const PldaModel &model, const Vector &a, const Vector &b);
/// As PldaScore for inputs already passed through Transform.
double PldaScoreProjected(const PldaModel &model, const Vector &a, const Vector &b);

void WritePlda(std::ostream &os, const PldaModel &model);
PldaModel ReadPlda(std::istream &is);
void SavePlda(const std::string &path, const PldaModel &model);
PldaModel LoadPlda(const std::string &path);

}  // namespace voxkit::ivector

#endif  // VOXKIT_IVECTOR_PLDA_H_
