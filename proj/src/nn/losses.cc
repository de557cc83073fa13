// src/nn/losses.cc

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

#include "voxkit/nn/losses.h"

#include <cmath>

namespace voxkit::nn {

Vector Softmax(const Vector &scores) {
  const double mx = scores.maxCoeff();
  Vector e = (scores.array() - mx).exp();
  return e / e.sum();
}

double SoftmaxCrossEntropy(const Tensor &logits, const std::vector<int> &labels, Tensor *grad) {
  const Shape &s = logits.shape();
  if (s.h != 1 || s.w != 1) Fail(ErrorKind::kInvalidInput, "logits must be [N, K, 1, 1]");
  if (static_cast<int>(labels.size()) != s.n)
    Fail(ErrorKind::kInvalidInput, "label count does not match batch size");
  *grad = Tensor(s);
  double loss = 0.0;
  for (int n = 0; n < s.n; ++n) {
    const int y = labels[static_cast<size_t>(n)];
    if (y < 0 || y >= s.c) Fail(ErrorKind::kInvalidInput, "label out of range");
    Vector z(s.c);
    for (int c = 0; c < s.c; ++c) z[c] = logits.data()[static_cast<size_t>(n) * s.c + c];
    const double mx = z.maxCoeff();
    const double lse = mx + std::log((z.array() - mx).exp().sum());
    loss += lse - z[y];
    for (int c = 0; c < s.c; ++c)
      grad->data()[static_cast<size_t>(n) * s.c + c] = (std::exp(z[c] - lse) - (c == y)) / s.n;
  }
  return loss / s.n;
}

double ContrastiveLoss(double dist, bool same, double margin) {
  if (dist < 0.0) Fail(ErrorKind::kInvalidInput, "negative distance");
  if (margin <= 0.0) Fail(ErrorKind::kInvalidInput, "margin must be positive");
  if (same) return dist * dist;
  const double slack = std::max(0.0, margin - dist);
  return slack * slack;
}

Matrix L2NormalizeRows(const Matrix &m) {
  Matrix out = m;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double norm = m.row(i).norm();
    if (norm > 0.0) out.row(i) /= norm;
  }
  return out;
}

double PairContrastiveLoss(const Matrix &a, const Matrix &b, const std::vector<bool> &same,
                           double margin, Matrix *grad_a, Matrix *grad_b) {
  const Eigen::Index n = a.rows();
  if (b.rows() != n || b.cols() != a.cols() || static_cast<Eigen::Index>(same.size()) != n)
    Fail(ErrorKind::kInvalidInput, "pair batch shapes disagree");
  *grad_a = Matrix::Zero(a.rows(), a.cols());
  *grad_b = Matrix::Zero(b.rows(), b.cols());
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double na = a.row(i).norm(), nb = b.row(i).norm();
    // A zero row stays zero after normalisation and passes no gradient.
    const Vector ya = na > 0.0 ? Vector(a.row(i).transpose() / na) : Vector::Zero(a.cols());
    const Vector yb = nb > 0.0 ? Vector(b.row(i).transpose() / nb) : Vector::Zero(b.cols());
    const Vector diff = ya - yb;
    const double dist = diff.norm();
    const bool s = same[static_cast<size_t>(i)];
    total += ContrastiveLoss(dist, s, margin);
    // dL/d(ya) for the pair, then through y = x / |x|.
    Vector dya;
    if (s) {
      dya = 2.0 * diff;
    } else if (dist < margin && dist > 0.0) {
      dya = -2.0 * (margin - dist) / dist * diff;
    } else {
      continue;
    }
    dya /= static_cast<double>(n);
    const Vector dyb = -dya;
    if (na > 0.0) grad_a->row(i) = ((dya - ya * ya.dot(dya)) / na).transpose();
    if (nb > 0.0) grad_b->row(i) = ((dyb - yb * yb.dot(dyb)) / nb).transpose();
  }
  return total / static_cast<double>(n);
}

Matrix TensorToRows(const Tensor &t) {
  const Shape &s = t.shape();
  const int per = s.c * s.h * s.w;
  Matrix m(s.n, per);
  for (int n = 0; n < s.n; ++n)
    for (int k = 0; k < per; ++k) m(n, k) = t.data()[static_cast<size_t>(n) * per + k];
  return m;
}

Tensor RowsToTensor(const Matrix &m) {
  Tensor t(Shape{static_cast<int>(m.rows()), static_cast<int>(m.cols()), 1, 1});
  for (Eigen::Index n = 0; n < m.rows(); ++n)
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      t.data()[static_cast<size_t>(n * m.cols() + k)] = m(n, k);
  return t;
}

}  // namespace voxkit::nn
