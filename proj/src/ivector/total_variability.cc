// src/ivector/total_variability.cc

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

#include "voxkit/ivector/total_variability.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "voxkit/binary_io.h"

namespace voxkit::ivector {

namespace {

constexpr size_t kGroup = 64;

void CheckStats(const TotalVariabilityModel &model, const BaumWelchStats &s) {
  if (s.n.size() != model.NumComponents() || s.f.rows() != model.NumComponents() ||
      s.f.cols() != model.Dim())
    Fail(ErrorKind::kModelMismatch, "statistics do not match the total variability model");
}

Vector Supervector(const Matrix &f) {
  Vector sv(f.size());
  for (Eigen::Index k = 0; k < f.rows(); ++k)
    for (Eigen::Index d = 0; d < f.cols(); ++d) sv[k * f.cols() + d] = f(k, d);
  return sv;
}

struct Posterior {
  Vector w;
  Matrix cov;  // L^-1
  double objective = 0.0;
};

Matrix Precision(const TotalVariabilityModel &m, const Vector &inv_var, const BaumWelchStats &s) {
  const int d = m.Dim();
  Vector wdiag(m.t.rows());
  for (Eigen::Index i = 0; i < wdiag.size(); ++i) wdiag[i] = s.n[i / d] * inv_var[i];
  Matrix l = m.t.transpose() * (m.t.array().colwise() * wdiag.array()).matrix();
  l.diagonal().array() += 1.0;
  return l;
}

Posterior ComputePosterior(const TotalVariabilityModel &m, const Vector &inv_var,
                           const BaumWelchStats &s, bool want_cov) {
  const int r = m.Rank();
  const Matrix l = Precision(m, inv_var, s);
  const Vector b = m.t.transpose() * inv_var.cwiseProduct(Supervector(s.f));
  Eigen::LLT<Matrix> llt(l);
  Posterior p;
  p.w = llt.solve(b);
  if (want_cov) p.cov = llt.solve(Matrix::Identity(r, r));
  const Matrix &lm = llt.matrixLLT();
  const double logdet = 2.0 * lm.diagonal().array().log().sum();
  p.objective = 0.5 * b.dot(p.w) - 0.5 * logdet;
  return p;
}

Vector InverseVariances(const TotalVariabilityModel &m) { return Supervector(m.variances).cwiseInverse(); }

}  // namespace

Matrix PosteriorPrecision(const TotalVariabilityModel &model, const BaumWelchStats &stats) {
  CheckStats(model, stats);
  return Precision(model, InverseVariances(model), stats);
}

Vector ExtractIvector(const TotalVariabilityModel &model, const BaumWelchStats &stats) {
  CheckStats(model, stats);
  return ComputePosterior(model, InverseVariances(model), stats, false).w;
}

std::vector<Vector> ExtractIvectors(const TotalVariabilityModel &model,
                                    const std::vector<BaumWelchStats> &stats) {
  for (const auto &s : stats) CheckStats(model, s);
  const Vector inv = InverseVariances(model);
  std::vector<Vector> out(stats.size());
#pragma omp parallel for schedule(dynamic)
  for (size_t i = 0; i < stats.size(); ++i) out[i] = ComputePosterior(model, inv, stats[i], false).w;
  return out;
}

TvResult TrainTotalVariability(const gmm::DiagonalGmm &ubm, const std::vector<BaumWelchStats> &stats,
                               const TvOptions &opts) {
  if (opts.rank < 1) Fail(ErrorKind::kInvalidInput, "rank must be positive");
  if (opts.iters < 1) Fail(ErrorKind::kInvalidInput, "iteration count must be positive");
  if (stats.size() < static_cast<size_t>(opts.rank))
    Fail(ErrorKind::kInsufficientData, std::to_string(stats.size()) +
                                           " utterances cannot train rank " +
                                           std::to_string(opts.rank));
  const int k = ubm.NumComponents(), d = ubm.Dim(), r = opts.rank;
  if (r > k * d) Fail(ErrorKind::kInvalidInput, "rank exceeds the supervector dimension");
  TvResult res;
  TotalVariabilityModel &m = res.model;
  m.variances = ubm.variances;
  for (const auto &s : stats) CheckStats(m, s);
  m.t.resize(static_cast<Eigen::Index>(k) * d, r);
  Rng rng(DeriveSeed(opts.seed, 0x7F));
  for (Eigen::Index i = 0; i < m.t.size(); ++i) m.t.data()[i] = 0.1 * rng.Normal();
  const Vector inv = InverseVariances(m);
  const size_t u = stats.size();

  for (int it = 0; it <= opts.iters; ++it) {
    const bool last = it == opts.iters;
    Matrix c = Matrix::Zero(m.t.rows(), r);
    Matrix a = Matrix::Zero(static_cast<Eigen::Index>(r) * r, k);
    double objective = 0.0;
    std::vector<Posterior> post(kGroup);
    for (size_t g0 = 0; g0 < u; g0 += kGroup) {
      const size_t g1 = std::min(u, g0 + kGroup);
      const auto gn = static_cast<Eigen::Index>(g1 - g0);
#pragma omp parallel for schedule(dynamic)
      for (size_t i = g0; i < g1; ++i) post[i - g0] = ComputePosterior(m, inv, stats[i], !last);
      for (size_t i = g0; i < g1; ++i) objective += post[i - g0].objective;
      if (last) continue;
      Matrix p(static_cast<Eigen::Index>(r) * r, gn), nmat(gn, k), f(m.t.rows(), gn), w(gn, r);
      for (Eigen::Index j = 0; j < gn; ++j) {
        const Posterior &pj = post[static_cast<size_t>(j)];
        const Matrix second = pj.cov + pj.w * pj.w.transpose();
        p.col(j) = Eigen::Map<const Vector>(second.data(), second.size());
        nmat.row(j) = stats[g0 + static_cast<size_t>(j)].n.transpose();
        f.col(j) = Supervector(stats[g0 + static_cast<size_t>(j)].f);
        w.row(j) = pj.w.transpose();
      }
      a += p * nmat;
      c += f * w;
    }
    res.objective.push_back(objective);
    if (last) break;
#pragma omp parallel for schedule(static)
    for (int kk = 0; kk < k; ++kk) {
      const Matrix ak = Eigen::Map<const Matrix>(a.col(kk).data(), r, r);
      Eigen::LLT<Matrix> llt(ak);
      const Matrix ck = c.middleRows(static_cast<Eigen::Index>(kk) * d, d);
      m.t.middleRows(static_cast<Eigen::Index>(kk) * d, d) = llt.solve(ck.transpose()).transpose();
    }
  }
  return res;
}

TotalVariabilityModel TrainTotalVariability(const gmm::DiagonalGmm &ubm,
                                            const std::vector<BaumWelchStats> &stats, int rank,
                                            int iters, uint64_t seed) {
  return TrainTotalVariability(ubm, stats, TvOptions{rank, iters, seed}).model;
}

void WriteTv(std::ostream &os, const TotalVariabilityModel &model) {
  io::WriteMagic(os, "VXT1");
  io::WriteU32(os, static_cast<uint32_t>(model.NumComponents()));
  io::WriteU32(os, static_cast<uint32_t>(model.Dim()));
  io::WriteU32(os, static_cast<uint32_t>(model.Rank()));
  io::WriteMatrixF64(os, model.t);
  io::WriteMatrixF64(os, model.variances);
  if (!os) Fail(ErrorKind::kIo, "failed writing total variability model");
}

TotalVariabilityModel ReadTv(std::istream &is) {
  io::ExpectMagic(is, "VXT1");
  const uint32_t k = io::ReadU32(is), d = io::ReadU32(is), r = io::ReadU32(is);
  if (k == 0 || d == 0 || r == 0 || static_cast<uint64_t>(k) * d * r > (1u << 30))
    Fail(ErrorKind::kIo, "implausible total variability dimensions");
  TotalVariabilityModel m;
  m.t.resize(static_cast<Eigen::Index>(k) * d, r);
  m.variances.resize(k, d);
  io::ReadMatrixF64(is, &m.t);
  io::ReadMatrixF64(is, &m.variances);
  return m;
}

void SaveTv(const std::string &path, const TotalVariabilityModel &model) {
  std::ofstream os(path, std::ios::binary);
  if (!os) Fail(ErrorKind::kIo, "cannot open " + path + " for writing");
  WriteTv(os, model);
}

TotalVariabilityModel LoadTv(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) Fail(ErrorKind::kIo, "cannot open " + path);
  return ReadTv(is);
}

}  // namespace voxkit::ivector
