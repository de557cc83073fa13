// src/ivector/plda.cc

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

#include "voxkit/ivector/plda.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>

#include "voxkit/binary_io.h"

namespace voxkit::ivector {

namespace {

constexpr double kWithinFloor = 1e-10;
constexpr double kRankTolerance = 1e-10;

Matrix Symmetrize(const Matrix &m) { return 0.5 * (m + m.transpose()); }

Matrix FloorEigenvalues(const Matrix &m, double floor) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(Symmetrize(m));
  const Vector ev = es.eigenvalues().cwiseMax(floor);
  return Symmetrize(es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose());
}

double LogDet(const Matrix &m) {
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) Fail(ErrorKind::kInvalidState, "matrix is not positive definite");
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

struct ClassStats {
  double n = 0;
  Vector mean;
  Matrix scatter;  // sum_j (x_j - mean)(x_j - mean)'
};

// log p(all samples) under the two-covariance model.
double TrainingLogLikelihood(const std::vector<ClassStats> &classes, const Vector &mu,
                             const Matrix &b, const Matrix &w) {
  const double d = static_cast<double>(mu.size());
  Eigen::LLT<Matrix> wllt(w);
  const double logdet_w = 2.0 * wllt.matrixLLT().diagonal().array().log().sum();
  double total = 0.0;
  for (const auto &c : classes) {
    const Matrix wnb = w + c.n * b;
    Eigen::LLT<Matrix> llt(wnb);
    const double logdet = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
    const Vector diff = c.mean - mu;
    total += -0.5 * c.n * d * std::log(2.0 * std::numbers::pi) - 0.5 * (c.n - 1.0) * logdet_w -
             0.5 * logdet - 0.5 * wllt.solve(c.scatter).trace() -
             0.5 * c.n * diff.dot(llt.solve(diff));
  }
  return total;
}

Vector Normalized(Vector z, bool length_norm) {
  if (length_norm) {
    const double n = z.norm();
    if (n > 0.0) z /= n;
  }
  return z;
}

}  // namespace

Vector PldaModel::Transform(const Vector &x) const {
  if (!trained_) Fail(ErrorKind::kModelMismatch, "PLDA model is not trained");
  if (x.size() != center_.size())
    Fail(ErrorKind::kModelMismatch, "i-vector dimension does not match the PLDA model");
  return projection_ * Normalized(x - center_, length_norm_);
}

void PldaModel::Finalize() {
  const auto d = mean_.size();
  const Matrix t = between_ + within_;
  Matrix m(2 * d, 2 * d);
  m << t, between_, between_, t;
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) Fail(ErrorKind::kInvalidState, "PLDA covariance is singular");
  const Matrix inv = llt.solve(Matrix::Identity(2 * d, 2 * d));
  const Matrix tinv = Eigen::LLT<Matrix>(t).solve(Matrix::Identity(d, d));
  q_ = Symmetrize(tinv - 0.5 * (inv.topLeftCorner(d, d) + inv.bottomRightCorner(d, d)));
  p_ = Symmetrize(-inv.topRightCorner(d, d));
  k_ = -0.5 * (2.0 * llt.matrixLLT().diagonal().array().log().sum()) + LogDet(t);
  trained_ = true;
}

PldaModel PldaModel::FromParameters(Vector center, bool length_norm, Matrix projection, Vector mean,
                                    Matrix between, Matrix within) {
  if (projection.cols() != center.size() || projection.rows() != mean.size() ||
      between.rows() != mean.size() || between.cols() != mean.size() ||
      within.rows() != mean.size() || within.cols() != mean.size())
    Fail(ErrorKind::kModelMismatch, "inconsistent PLDA parameter sizes");
  PldaModel m;
  m.center_ = std::move(center);
  m.length_norm_ = length_norm;
  m.projection_ = std::move(projection);
  m.mean_ = std::move(mean);
  m.between_ = Symmetrize(between);
  m.within_ = Symmetrize(within);
  m.Finalize();
  return m;
}

PldaModel TrainPlda(const std::vector<Vector> &ivectors, const std::vector<int> &labels,
                    const PldaOptions &opts, std::vector<double> *history) {
  if (ivectors.size() != labels.size() || ivectors.empty())
    Fail(ErrorKind::kInvalidInput, "i-vector/label count mismatch");
  const Eigen::Index in = ivectors.front().size();
  for (const auto &v : ivectors)
    if (v.size() != in) Fail(ErrorKind::kInvalidInput, "i-vector dimensions differ");
  std::map<int, std::vector<size_t>> by_class;
  for (size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
  if (by_class.size() < 2) Fail(ErrorKind::kInvalidInput, "PLDA needs at least two classes");
  if (std::none_of(by_class.begin(), by_class.end(), [](const auto &kv) { return kv.second.size() >= 2; }))
    Fail(ErrorKind::kInvalidInput, "PLDA needs a class with at least two samples");

  const double n_total = static_cast<double>(ivectors.size());
  PldaModel model;
  model.length_norm_ = opts.length_norm;
  model.center_ = Vector::Zero(in);
  for (const auto &v : ivectors) model.center_ += v;
  model.center_ /= n_total;
  std::vector<Vector> z;
  z.reserve(ivectors.size());
  for (const auto &v : ivectors) z.push_back(Normalized(v - model.center_, opts.length_norm));

  Vector zmean = Vector::Zero(in);
  for (const auto &v : z) zmean += v;
  zmean /= n_total;
  Matrix st = Matrix::Zero(in, in), sb = Matrix::Zero(in, in);
  for (const auto &v : z) st += (v - zmean) * (v - zmean).transpose();
  st /= n_total;
  for (const auto &[label, idx] : by_class) {
    Vector m = Vector::Zero(in);
    for (size_t i : idx) m += z[i];
    m /= static_cast<double>(idx.size());
    sb += static_cast<double>(idx.size()) * (m - zmean) * (m - zmean).transpose();
  }
  sb /= n_total;

  Eigen::SelfAdjointEigenSolver<Matrix> tes(Symmetrize(st));
  const Vector tev = tes.eigenvalues();
  const double top = tev.maxCoeff();
  int rank = 0;
  for (Eigen::Index i = 0; i < tev.size(); ++i) rank += tev[i] > kRankTolerance * std::max(top, 1e-300);
  if (!opts.lda) {
    model.projection_ = Matrix::Identity(in, in);
  } else {
    if (opts.out_dim < 1) Fail(ErrorKind::kInvalidInput, "PLDA output dimension must be positive");
    if (opts.out_dim > rank)
      Fail(ErrorKind::kInsufficientData, "PLDA output dimension " + std::to_string(opts.out_dim) +
                                             " exceeds the data rank " + std::to_string(rank));
    // Whiten the total covariance over its range, then keep the directions
    // of largest between-class variance.
    Matrix whiten(rank, in);
    for (int j = 0; j < rank; ++j) {
      const Eigen::Index col = tev.size() - 1 - j;
      whiten.row(j) = tes.eigenvectors().col(col).transpose() / std::sqrt(tev[col]);
    }
    Eigen::SelfAdjointEigenSolver<Matrix> bes(Symmetrize(whiten * sb * whiten.transpose()));
    Matrix u(rank, opts.out_dim);
    for (int j = 0; j < opts.out_dim; ++j) u.col(j) = bes.eigenvectors().col(rank - 1 - j);
    model.projection_ = u.transpose() * whiten;
    for (Eigen::Index r = 0; r < model.projection_.rows(); ++r) {
      Eigen::Index arg;
      model.projection_.row(r).cwiseAbs().maxCoeff(&arg);
      if (model.projection_(r, arg) < 0) model.projection_.row(r) *= -1.0;
    }
  }

  const Eigen::Index d = model.projection_.rows();
  std::vector<ClassStats> classes;
  Vector mu = Vector::Zero(d);
  for (const auto &[label, idx] : by_class) {
    ClassStats c;
    c.n = static_cast<double>(idx.size());
    c.mean = Vector::Zero(d);
    std::vector<Vector> y;
    for (size_t i : idx) y.push_back(model.projection_ * z[i]);
    for (const auto &v : y) c.mean += v;
    c.mean /= c.n;
    c.scatter = Matrix::Zero(d, d);
    for (const auto &v : y) c.scatter += (v - c.mean) * (v - c.mean).transpose();
    mu += c.n * c.mean;
    classes.push_back(std::move(c));
  }
  mu /= n_total;
  const double n_classes = static_cast<double>(classes.size());
  Matrix b = Matrix::Zero(d, d), w = Matrix::Zero(d, d);
  for (const auto &c : classes) {
    b += (c.mean - mu) * (c.mean - mu).transpose();
    w += c.scatter;
  }
  b = FloorEigenvalues(b / n_classes, 0.0);
  w = FloorEigenvalues(w / n_total, kWithinFloor);

  for (int it = 0; it <= opts.iters; ++it) {
    if (history) history->push_back(TrainingLogLikelihood(classes, mu, b, w));
    if (it == opts.iters) break;
    std::vector<Vector> yhat(classes.size());
    std::vector<Matrix> ycov(classes.size());
    for (size_t i = 0; i < classes.size(); ++i) {
      const auto &c = classes[i];
      const Matrix gain = b * Eigen::LLT<Matrix>(b + w / c.n).solve(Matrix::Identity(d, d));
      yhat[i] = mu + gain * (c.mean - mu);
      ycov[i] = Symmetrize(b - gain * b);
    }
    Vector new_mu = Vector::Zero(d);
    for (const auto &y : yhat) new_mu += y;
    new_mu /= n_classes;
    Matrix nb = Matrix::Zero(d, d), nw = Matrix::Zero(d, d);
    for (size_t i = 0; i < classes.size(); ++i) {
      const auto &c = classes[i];
      nb += ycov[i] + (yhat[i] - new_mu) * (yhat[i] - new_mu).transpose();
      const Vector off = c.mean - yhat[i];
      nw += c.scatter + c.n * (off * off.transpose() + ycov[i]);
    }
    mu = new_mu;
    b = FloorEigenvalues(nb / n_classes, 0.0);
    w = FloorEigenvalues(nw / n_total, kWithinFloor);
  }
  model.mean_ = mu;
  model.between_ = b;
  model.within_ = w;
  model.Finalize();
  return model;
}

double PldaScoreProjected(const PldaModel &model, const Vector &a, const Vector &b) {
  if (!model.trained_) Fail(ErrorKind::kModelMismatch, "PLDA model is not trained");
  if (a.size() != model.mean_.size() || b.size() != model.mean_.size())
    Fail(ErrorKind::kModelMismatch, "projected dimension does not match the PLDA model");
  const Vector x = a - model.mean_, y = b - model.mean_;
  return 0.5 * x.dot(model.q_ * x) + 0.5 * y.dot(model.q_ * y) + x.dot(model.p_ * y) + model.k_;
}

double PldaScore(const PldaModel &model, const Vector &a, const Vector &b) {
  return PldaScoreProjected(model, model.Transform(a), model.Transform(b));
}

void WritePlda(std::ostream &os, const PldaModel &model) {
  if (!model.trained()) Fail(ErrorKind::kModelMismatch, "cannot save an untrained PLDA model");
  io::WriteMagic(os, "VXP1");
  io::WriteU32(os, static_cast<uint32_t>(model.InputDim()));
  io::WriteU32(os, static_cast<uint32_t>(model.OutputDim()));
  io::WriteU32(os, model.length_norm() ? 1u : 0u);
  io::WriteF64s(os, model.center().data(), static_cast<size_t>(model.InputDim()));
  io::WriteMatrixF64(os, model.projection());
  io::WriteF64s(os, model.mean().data(), static_cast<size_t>(model.OutputDim()));
  io::WriteMatrixF64(os, model.between_cov());
  io::WriteMatrixF64(os, model.within_cov());
  if (!os) Fail(ErrorKind::kIo, "failed writing PLDA model");
}

PldaModel ReadPlda(std::istream &is) {
  io::ExpectMagic(is, "VXP1");
  const uint32_t in = io::ReadU32(is), out = io::ReadU32(is);
  const bool lnorm = io::ReadU32(is) != 0;
  if (in == 0 || out == 0 || in > 65536 || out > in) Fail(ErrorKind::kIo, "implausible PLDA dimensions");
  Vector center(in), mean(out);
  Matrix proj(out, in), b(out, out), w(out, out);
  io::ReadF64s(is, center.data(), in);
  io::ReadMatrixF64(is, &proj);
  io::ReadF64s(is, mean.data(), out);
  io::ReadMatrixF64(is, &b);
  io::ReadMatrixF64(is, &w);
  return PldaModel::FromParameters(center, lnorm, proj, mean, b, w);
}

void SavePlda(const std::string &path, const PldaModel &model) {
  std::ofstream os(path, std::ios::binary);
  if (!os) Fail(ErrorKind::kIo, "cannot open " + path + " for writing");
  WritePlda(os, model);
}

PldaModel LoadPlda(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) Fail(ErrorKind::kIo, "cannot open " + path);
  return ReadPlda(is);
}

}  // namespace voxkit::ivector
