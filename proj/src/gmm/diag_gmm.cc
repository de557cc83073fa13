// src/gmm/diag_gmm.cc

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

#include "voxkit/gmm/diag_gmm.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include "voxkit/binary_io.h"

namespace voxkit::gmm {

namespace {

constexpr Eigen::Index kBlockFrames = 2048;
constexpr size_t kBlocksPerGroup = 32;
constexpr double kAbsoluteVarianceFloor = 1e-10;

struct Block {
  const Matrix *frames;
  Eigen::Index start, len;
};

struct Accum {
  double ll = 0.0;
  Vector n;
  Matrix f, s;  // K x D first and second order sums

  void Init(int k, int d) {
    ll = 0.0;
    n = Vector::Zero(k);
    f = Matrix::Zero(k, d);
    s = Matrix::Zero(k, d);
  }
  void Add(const Accum &o) {
    ll += o.ll;
    n += o.n;
    f += o.f;
    s += o.s;
  }
};

std::vector<Block> MakeBlocks(const std::vector<Matrix> &features) {
  std::vector<Block> blocks;
  for (const auto &m : features)
    for (Eigen::Index s = 0; s < m.cols(); s += kBlockFrames)
      blocks.push_back({&m, s, std::min(kBlockFrames, m.cols() - s)});
  return blocks;
}

// Sufficient statistics over all frames.  Blocks are fixed by the data, and
// partial sums are merged in block order, so the result does not depend on
// the thread count.
Accum Estep(const DiagonalGmm &gmm, const std::vector<Block> &blocks) {
  const int k = gmm.NumComponents(), d = gmm.Dim();
  Accum total;
  total.Init(k, d);
  std::vector<Accum> part(kBlocksPerGroup);
  for (size_t g0 = 0; g0 < blocks.size(); g0 += kBlocksPerGroup) {
    const size_t g1 = std::min(blocks.size(), g0 + kBlocksPerGroup);
#pragma omp parallel for schedule(dynamic)
    for (size_t b = g0; b < g1; ++b) {
      const Block &blk = blocks[b];
      const Matrix x = blk.frames->middleCols(blk.start, blk.len);
      Vector ll;
      const Matrix post = Posteriors(gmm, x, &ll);
      Accum &a = part[b - g0];
      a.ll = ll.sum();
      a.n = post.rowwise().sum();
      a.f = post * x.transpose();
      a.s = post * x.cwiseProduct(x).transpose();
    }
    for (size_t b = g0; b < g1; ++b) total.Add(part[b - g0]);
  }
  return total;
}

void CheckDim(const DiagonalGmm &gmm, const Matrix &frames) {
  if (frames.rows() != gmm.Dim())
    Fail(ErrorKind::kModelMismatch, "frame dimension " + std::to_string(frames.rows()) +
                                        " does not match model dimension " +
                                        std::to_string(gmm.Dim()));
}

// k-means++ seeding followed by one assignment/update pass.
DiagonalGmm KmeansInit(const std::vector<Matrix> &features, const UbmOptions &opts,
                       const Vector &floor, const Vector &global_var) {
  size_t total = 0;
  for (const auto &m : features) total += static_cast<size_t>(m.cols());
  const int k = opts.components;
  const int d = static_cast<int>(features.front().rows());
  Rng rng(DeriveSeed(opts.seed, 0x6A11));

  std::vector<size_t> pick(total);
  for (size_t i = 0; i < total; ++i) pick[i] = i;
  const size_t n = std::min(total, std::max(opts.init_frames, static_cast<size_t>(k)));
  // Partial Fisher-Yates: the first n entries are a uniform sample.
  for (size_t i = 0; i < n; ++i) std::swap(pick[i], pick[i + rng.Index(total - i)]);
  std::sort(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(n));
  Matrix x(d, static_cast<Eigen::Index>(n));
  {
    size_t utt = 0, offset = 0;
    for (size_t i = 0; i < n; ++i) {
      while (pick[i] >= offset + static_cast<size_t>(features[utt].cols())) {
        offset += static_cast<size_t>(features[utt].cols());
        ++utt;
      }
      x.col(static_cast<Eigen::Index>(i)) =
          features[utt].col(static_cast<Eigen::Index>(pick[i] - offset));
    }
  }

  const auto nn = static_cast<Eigen::Index>(n);
  Matrix centers(d, k);
  centers.col(0) = x.col(static_cast<Eigen::Index>(rng.Index(n)));
  Vector best = (x.colwise() - centers.col(0)).colwise().squaredNorm().transpose();
  for (int c = 1; c < k; ++c) {
    const double sum = best.sum();
    Eigen::Index chosen = static_cast<Eigen::Index>(rng.Index(n));
    if (sum > 0.0) {
      double u = rng.Uniform() * sum;
      for (Eigen::Index i = 0; i < nn; ++i) {
        u -= best[i];
        if (u < 0.0) {
          chosen = i;
          break;
        }
      }
    }
    centers.col(c) = x.col(chosen);
    best = best.cwiseMin((x.colwise() - centers.col(c)).colwise().squaredNorm().transpose());
  }

  std::vector<int> assign(n);
  const Vector cn = centers.colwise().squaredNorm().transpose();
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < nn; ++i) {
    const Vector dist = cn - 2.0 * centers.transpose() * x.col(i);
    Eigen::Index arg;
    dist.minCoeff(&arg);
    assign[static_cast<size_t>(i)] = static_cast<int>(arg);
  }

  DiagonalGmm gmm;
  gmm.weights = Vector::Zero(k);
  gmm.means = Matrix::Zero(k, d);
  gmm.variances = Matrix::Zero(k, d);
  Matrix sq = Matrix::Zero(k, d);
  for (Eigen::Index i = 0; i < nn; ++i) {
    const int c = assign[static_cast<size_t>(i)];
    gmm.weights[c] += 1.0;
    gmm.means.row(c) += x.col(i).transpose();
    sq.row(c) += x.col(i).cwiseProduct(x.col(i)).transpose();
  }
  for (int c = 0; c < k; ++c) {
    const double cnt = gmm.weights[c];
    if (cnt >= 2.0) {
      gmm.means.row(c) /= cnt;
      gmm.variances.row(c) = sq.row(c) / cnt - gmm.means.row(c).cwiseProduct(gmm.means.row(c));
    } else {
      if (cnt > 0)
        gmm.means.row(c) /= cnt;
      else
        gmm.means.row(c) = centers.col(c).transpose();
      gmm.variances.row(c) = global_var.transpose();
    }
    gmm.variances.row(c) = gmm.variances.row(c).cwiseMax(floor.transpose());
  }
  gmm.weights = (gmm.weights.array() + 1.0) / (static_cast<double>(n) + k);
  return gmm;
}

}  // namespace

void DiagonalGmm::Validate() const {
  const auto k = weights.size();
  if (k < 1 || means.rows() != k || variances.rows() != k || variances.cols() != means.cols() ||
      means.cols() < 1)
    Fail(ErrorKind::kModelMismatch, "inconsistent GMM dimensions");
  if ((weights.array() < 0.0).any()) Fail(ErrorKind::kModelMismatch, "negative GMM weight");
  if ((variances.array() <= 0.0).any())
    Fail(ErrorKind::kModelMismatch, "non-positive GMM variance");
}

Matrix ComponentLogLikelihoods(const DiagonalGmm &gmm, const Matrix &frames) {
  CheckDim(gmm, frames);
  const Matrix inv = gmm.variances.cwiseInverse();
  const Matrix mu_inv = gmm.means.cwiseProduct(inv);
  const int k = gmm.NumComponents();
  Vector c(k);
  for (int i = 0; i < k; ++i) {
    const double logdet = (2.0 * std::numbers::pi * gmm.variances.row(i).array()).log().sum();
    c[i] = std::log(gmm.weights[i]) - 0.5 * (logdet + gmm.means.row(i).dot(mu_inv.row(i)));
  }
  Matrix out = mu_inv * frames - 0.5 * inv * frames.cwiseProduct(frames);
  out.colwise() += c;
  return out;
}

Matrix Posteriors(const DiagonalGmm &gmm, const Matrix &frames, Vector *frame_ll) {
  Matrix ll = ComponentLogLikelihoods(gmm, frames);
  if (frame_ll) frame_ll->resize(ll.cols());
  for (Eigen::Index t = 0; t < ll.cols(); ++t) {
    const double m = ll.col(t).maxCoeff();
    ll.col(t) = (ll.col(t).array() - m).exp();
    const double s = ll.col(t).sum();
    ll.col(t) /= s;
    if (frame_ll) (*frame_ll)[t] = m + std::log(s);
  }
  return ll;
}

double LogLikelihood(const DiagonalGmm &gmm, const Matrix &frames) {
  CheckDim(gmm, frames);
  if (frames.cols() == 0) Fail(ErrorKind::kInvalidInput, "no frames");
  Vector ll;
  Posteriors(gmm, frames, &ll);
  return ll.mean();
}

double LogLikelihood(const DiagonalGmm &gmm, const MfccFrames &frames) {
  return LogLikelihood(gmm, frames.coeffs);
}

UbmResult TrainUbm(const std::vector<Matrix> &features, const UbmOptions &opts) {
  if (opts.components < 1) Fail(ErrorKind::kInvalidInput, "component count must be positive");
  if (opts.iters < 1) Fail(ErrorKind::kInvalidInput, "iteration count must be positive");
  if (features.empty()) Fail(ErrorKind::kInsufficientData, "no training features");
  const Eigen::Index d = features.front().rows();
  size_t total = 0;
  Vector sum = Vector::Zero(d), sq = Vector::Zero(d);
  for (const auto &m : features) {
    if (m.rows() != d) Fail(ErrorKind::kModelMismatch, "feature dimensions differ");
    total += static_cast<size_t>(m.cols());
    sum += m.rowwise().sum();
    sq += m.cwiseProduct(m).rowwise().sum();
  }
  if (total < static_cast<size_t>(opts.components))
    Fail(ErrorKind::kInsufficientData, std::to_string(total) + " frames cannot train " +
                                           std::to_string(opts.components) + " components");
  const double nt = static_cast<double>(total);
  const Vector mean = sum / nt;
  const Vector global_var = (sq / nt - mean.cwiseProduct(mean)).cwiseMax(0.0);
  UbmResult res;
  res.variance_floor = (opts.floor_scale * global_var).cwiseMax(kAbsoluteVarianceFloor);
  const Vector &floor = res.variance_floor;

  res.gmm = KmeansInit(features, opts, floor, global_var.cwiseMax(floor));
  const auto blocks = MakeBlocks(features);
  for (int it = 0; it <= opts.iters; ++it) {
    Accum a = Estep(res.gmm, blocks);
    res.log_likelihood.push_back(a.ll);
    if (it == opts.iters) break;
    DiagonalGmm &g = res.gmm;
    g.weights = a.n / nt;
    for (int c = 0; c < opts.components; ++c) {
      // An empty component keeps its previous mean and variance.
      if (a.n[c] <= 0.0) continue;
      const Vector mu = a.f.row(c).transpose() / a.n[c];
      Vector var = a.s.row(c).transpose() / a.n[c] - mu.cwiseProduct(mu);
      g.means.row(c) = mu.transpose();
      g.variances.row(c) = var.cwiseMax(floor).transpose();
    }
  }
  return res;
}

DiagonalGmm TrainUbm(const std::vector<MfccFrames> &features, int k, int iters, uint64_t seed) {
  std::vector<Matrix> mats;
  mats.reserve(features.size());
  for (const auto &f : features) mats.push_back(f.coeffs);
  UbmOptions opts;
  opts.components = k;
  opts.iters = iters;
  opts.seed = seed;
  return TrainUbm(mats, opts).gmm;
}

DiagonalGmm MapAdapt(const DiagonalGmm &ubm, const Matrix &frames, double relevance) {
  CheckDim(ubm, frames);
  if (!(relevance > 0.0)) Fail(ErrorKind::kInvalidInput, "relevance factor must be positive");
  DiagonalGmm out = ubm;
  if (frames.cols() == 0) return out;
  const Matrix post = Posteriors(ubm, frames);
  const Vector n = post.rowwise().sum();
  const Matrix f = post * frames.transpose();
  for (int c = 0; c < ubm.NumComponents(); ++c)
    out.means.row(c) = (f.row(c) + relevance * ubm.means.row(c)) / (n[c] + relevance);
  return out;
}

DiagonalGmm MapAdapt(const DiagonalGmm &ubm, const MfccFrames &frames, double relevance) {
  return MapAdapt(ubm, frames.coeffs, relevance);
}

double GmmUbmScore(const DiagonalGmm &ubm, const DiagonalGmm &speaker, const Matrix &frames) {
  if (ubm.NumComponents() != speaker.NumComponents() || ubm.Dim() != speaker.Dim())
    Fail(ErrorKind::kModelMismatch, "speaker model and UBM differ in size");
  return LogLikelihood(speaker, frames) - LogLikelihood(ubm, frames);
}

double GmmUbmScore(const DiagonalGmm &ubm, const DiagonalGmm &speaker, const MfccFrames &frames) {
  return GmmUbmScore(ubm, speaker, frames.coeffs);
}

void WriteGmm(std::ostream &os, const DiagonalGmm &gmm) {
  gmm.Validate();
  io::WriteMagic(os, "VXG1");
  io::WriteU32(os, static_cast<uint32_t>(gmm.NumComponents()));
  io::WriteU32(os, static_cast<uint32_t>(gmm.Dim()));
  io::WriteF64s(os, gmm.weights.data(), static_cast<size_t>(gmm.weights.size()));
  io::WriteMatrixF64(os, gmm.means);
  io::WriteMatrixF64(os, gmm.variances);
  if (!os) Fail(ErrorKind::kIo, "failed writing GMM");
}

DiagonalGmm ReadGmm(std::istream &is) {
  io::ExpectMagic(is, "VXG1");
  const uint32_t k = io::ReadU32(is), d = io::ReadU32(is);
  if (k == 0 || d == 0 || static_cast<uint64_t>(k) * d > (1u << 28))
    Fail(ErrorKind::kIo, "implausible GMM dimensions");
  DiagonalGmm g;
  g.weights.resize(k);
  io::ReadF64s(is, g.weights.data(), k);
  g.means.resize(k, d);
  g.variances.resize(k, d);
  io::ReadMatrixF64(is, &g.means);
  io::ReadMatrixF64(is, &g.variances);
  g.Validate();
  return g;
}

void SaveGmm(const std::string &path, const DiagonalGmm &gmm) {
  std::ofstream os(path, std::ios::binary);
  if (!os) Fail(ErrorKind::kIo, "cannot open " + path + " for writing");
  WriteGmm(os, gmm);
}

DiagonalGmm LoadGmm(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) Fail(ErrorKind::kIo, "cannot open " + path);
  return ReadGmm(is);
}

}  // namespace voxkit::gmm
