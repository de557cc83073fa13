// src/ivector/svm.cc

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

#include "voxkit/ivector/svm.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "voxkit/binary_io.h"

namespace voxkit::ivector {

namespace {

void CheckUnitRows(const Matrix &x, double tol, const char *what) {
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    if (std::abs(x.row(i).norm() - 1.0) > tol)
      Fail(ErrorKind::kInvalidInput, std::string(what) + " row " + std::to_string(i) +
                                         " is not L2-normalised");
}

Matrix WithBias(const Matrix &x) {
  Matrix out(x.rows(), x.cols() + 1);
  out << x, Vector::Ones(x.rows());
  return out;
}

double Objective(const Vector &w, const Matrix &xb, const std::vector<int> &y, double lambda) {
  const Vector margin = xb * w;
  double hinge = 0.0;
  for (Eigen::Index i = 0; i < xb.rows(); ++i)
    hinge += std::max(0.0, 1.0 - y[static_cast<size_t>(i)] * margin[i]);
  return 0.5 * lambda * w.squaredNorm() + hinge / static_cast<double>(xb.rows());
}

Vector TrainBinary(const Matrix &xb, const std::vector<int> &y, double c, int epochs,
                   std::vector<double> *objective) {
  if (!(c > 0.0)) Fail(ErrorKind::kInvalidInput, "C must be positive");
  if (epochs < 1) Fail(ErrorKind::kInvalidInput, "epoch count must be positive");
  const double lambda = 1.0 / c;
  const double radius = 1.0 / std::sqrt(lambda);
  const double n = static_cast<double>(xb.rows());
  Vector w = Vector::Zero(xb.cols());
  Vector best = w;
  double best_obj = Objective(w, xb, y, lambda);
  if (objective) objective->clear();
  for (int t = 1; t <= epochs; ++t) {
    const Vector margin = xb * w;
    Vector g = Vector::Zero(xb.cols());
    for (Eigen::Index i = 0; i < xb.rows(); ++i) {
      const int yi = y[static_cast<size_t>(i)];
      if (yi * margin[i] < 1.0) g -= yi * xb.row(i).transpose();
    }
    const double eta = 1.0 / (lambda * t);
    w = (1.0 - eta * lambda) * w - (eta / n) * g;
    const double norm = w.norm();
    if (norm > radius) w *= radius / norm;
    const double obj = Objective(w, xb, y, lambda);
    if (obj < best_obj) {
      best_obj = obj;
      best = w;
    }
    if (objective) objective->push_back(best_obj);
  }
  return best;
}

double Top1(const LinearSvm &m, const Matrix &x, const std::vector<int> &labels) {
  if (x.rows() == 0) return 0.0;
  const Matrix scores = WithBias(x) * m.weights.transpose();
  size_t hit = 0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    Eigen::Index arg;
    scores.row(i).maxCoeff(&arg);
    hit += static_cast<int>(arg) == labels[static_cast<size_t>(i)];
  }
  return static_cast<double>(hit) / static_cast<double>(x.rows());
}

}  // namespace

double SvmObjective(const Vector &w, const Matrix &x, const std::vector<int> &y, double c) {
  return Objective(w, WithBias(x), y, 1.0 / c);
}

Vector TrainBinarySvm(const Matrix &x, const std::vector<int> &y, double c, int epochs,
                      std::vector<double> *objective) {
  if (static_cast<size_t>(x.rows()) != y.size() || x.rows() == 0)
    Fail(ErrorKind::kInvalidInput, "sample/label count mismatch");
  return TrainBinary(WithBias(x), y, c, epochs, objective);
}

LinearSvm TrainOvrSvm(const Matrix &features, const std::vector<int> &labels,
                      const Matrix &validation, const std::vector<int> &validation_labels,
                      const SvmOptions &opts, SvmReport *report) {
  if (static_cast<size_t>(features.rows()) != labels.size() || features.rows() == 0)
    Fail(ErrorKind::kInvalidInput, "sample/label count mismatch");
  if (static_cast<size_t>(validation.rows()) != validation_labels.size())
    Fail(ErrorKind::kInvalidInput, "validation sample/label count mismatch");
  if (validation.rows() > 0 && validation.cols() != features.cols())
    Fail(ErrorKind::kInvalidInput, "validation dimension differs from training");
  if (opts.c_grid.empty()) Fail(ErrorKind::kInvalidInput, "empty C grid");
  if (opts.c_grid.size() > 1 && validation.rows() == 0)
    Fail(ErrorKind::kInvalidInput, "choosing C needs a validation set");
  CheckUnitRows(features, opts.norm_tolerance, "training");
  CheckUnitRows(validation, opts.norm_tolerance, "validation");
  const int n_classes = *std::max_element(labels.begin(), labels.end()) + 1;
  if (*std::min_element(labels.begin(), labels.end()) < 0)
    Fail(ErrorKind::kInvalidInput, "negative class label");
  if (n_classes < 2) Fail(ErrorKind::kInvalidInput, "one-vs-rest training needs two classes");
  for (int y : validation_labels)
    if (y < 0 || y >= n_classes) Fail(ErrorKind::kInvalidInput, "validation label out of range");

  const Matrix xb = WithBias(features);
  std::vector<double> grid = opts.c_grid;
  std::sort(grid.begin(), grid.end());
  SvmReport rep;
  LinearSvm best;
  double best_acc = -1.0;
  for (double c : grid) {
    LinearSvm m;
    m.c = c;
    m.weights.resize(n_classes, xb.cols());
    std::vector<std::vector<double>> hist(static_cast<size_t>(n_classes));
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < n_classes; ++k) {
      try {
        std::vector<int> y(labels.size());
        for (size_t i = 0; i < labels.size(); ++i) y[i] = labels[i] == k ? 1 : -1;
        m.weights.row(k) = TrainBinary(xb, y, c, opts.epochs, &hist[static_cast<size_t>(k)]).transpose();
      } catch (...) {
#pragma omp critical
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
    const double acc = grid.size() == 1 ? 1.0 : Top1(m, validation, validation_labels);
    rep.validation_accuracy.push_back(acc);
    if (acc > best_acc) {
      best_acc = acc;
      best = m;
      rep.chosen_c = c;
      rep.objective = std::move(hist);
    }
  }
  if (report) *report = std::move(rep);
  return best;
}

Vector SvmScores(const LinearSvm &model, const Vector &x, double norm_tolerance) {
  if (x.size() != model.Dim())
    Fail(ErrorKind::kModelMismatch, "feature dimension does not match the SVM");
  if (std::abs(x.norm() - 1.0) > norm_tolerance)
    Fail(ErrorKind::kInvalidInput, "SVM input is not L2-normalised");
  return model.weights.leftCols(model.Dim()) * x + model.weights.col(model.Dim());
}

int SvmClassify(const LinearSvm &model, const Vector &x, double norm_tolerance) {
  const Vector s = SvmScores(model, x, norm_tolerance);
  Eigen::Index arg = 0;
  for (Eigen::Index k = 1; k < s.size(); ++k)
    if (s[k] > s[arg]) arg = k;
  return static_cast<int>(arg);
}

void WriteSvm(std::ostream &os, const LinearSvm &model) {
  io::WriteMagic(os, "VXS1");
  io::WriteU32(os, static_cast<uint32_t>(model.weights.rows()));
  io::WriteU32(os, static_cast<uint32_t>(model.weights.cols()));
  io::WriteF64(os, model.c);
  io::WriteMatrixF64(os, model.weights);
  if (!os) Fail(ErrorKind::kIo, "failed writing SVM");
}

LinearSvm ReadSvm(std::istream &is) {
  io::ExpectMagic(is, "VXS1");
  const uint32_t rows = io::ReadU32(is), cols = io::ReadU32(is);
  if (rows == 0 || cols < 2 || static_cast<uint64_t>(rows) * cols > (1u << 28))
    Fail(ErrorKind::kIo, "implausible SVM dimensions");
  LinearSvm m;
  m.c = io::ReadF64(is);
  m.weights.resize(rows, cols);
  io::ReadMatrixF64(is, &m.weights);
  return m;
}

void SaveSvm(const std::string &path, const LinearSvm &model) {
  std::ofstream os(path, std::ios::binary);
  if (!os) Fail(ErrorKind::kIo, "cannot open " + path + " for writing");
  WriteSvm(os, model);
}

LinearSvm LoadSvm(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) Fail(ErrorKind::kIo, "cannot open " + path);
  return ReadSvm(is);
}

}  // namespace voxkit::ivector
