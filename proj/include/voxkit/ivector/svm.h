// include/voxkit/ivector/svm.h

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

#ifndef VOXKIT_IVECTOR_SVM_H_
#define VOXKIT_IVECTOR_SVM_H_

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "voxkit/common.h"

namespace voxkit::ivector {

/// One linear scorer per class; the last column of `weights` is the bias.
struct LinearSvm {
  Matrix weights;  // [n_classes x (dim + 1)]
  double c = 1.0;

  int NumClasses() const { return static_cast<int>(weights.rows()); }
  int Dim() const { return static_cast<int>(weights.cols()) - 1; }
};

struct SvmOptions {
  std::vector<double> c_grid = {0.1, 1.0, 10.0, 100.0};
  int epochs = 200;
  /// Allowed deviation of every input norm from 1.
  double norm_tolerance = 1e-6;
};

struct SvmReport {
  double chosen_c = 0.0;
  std::vector<double> validation_accuracy;  // one per grid entry
  /// Objective of the returned iterate after each epoch, per class, for
  /// the chosen C.
  std::vector<std::vector<double>> objective;
};

/// Objective for one binary problem with labels +-1 and regulariser
/// lambda = 1 / C:  lambda / 2 |w|^2 + mean_i max(0, 1 - y_i w'[x_i; 1]).
double SvmObjective(const Vector &w, const Matrix &x, const std::vector<int> &y, double c);

/// Deterministic full-batch subgradient descent with step 1 / (lambda t);
/// returns the best iterate seen.  x holds one sample per row, y is +-1.
Vector TrainBinarySvm(const Matrix &x, const std::vector<int> &y, double c, int epochs,
                      std::vector<double> *objective = nullptr);

/// One-vs-rest training over classes 0..max(label); C is picked from the
/// grid by validation top-1 accuracy (ties to the smaller C).  Rows of both
/// sets must have unit L2 norm, otherwise kInvalidInput.
LinearSvm TrainOvrSvm(const Matrix &features, const std::vector<int> &labels,
                      const Matrix &validation, const std::vector<int> &validation_labels,
                      const SvmOptions &opts = {}, SvmReport *report = nullptr);

/// Per-class scores w_k'x + b_k.  kModelMismatch on dimension mismatch,
/// kInvalidInput when x is not unit norm.
Vector SvmScores(const LinearSvm &model, const Vector &x, double norm_tolerance = 1e-6);
/// Highest-scoring class; ties go to the lowest class id.
int SvmClassify(const LinearSvm &model, const Vector &x, double norm_tolerance = 1e-6);

void WriteSvm(std::ostream &os, const LinearSvm &model);
LinearSvm ReadSvm(std::istream &is);
void SaveSvm(const std::string &path, const LinearSvm &model);
LinearSvm LoadSvm(const std::string &path);

}  // namespace voxkit::ivector

#endif  // VOXKIT_IVECTOR_SVM_H_
