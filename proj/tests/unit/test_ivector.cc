// tests/unit/test_ivector.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oracles.h"
#include "voxkit/gmm/diag_gmm.h"
#include "voxkit/ivector/baum_welch.h"
#include "voxkit/ivector/plda.h"
#include "voxkit/ivector/svm.h"
#include "voxkit/ivector/total_variability.h"

using namespace voxkit;
using namespace voxkit::ivector;
using namespace voxkit::testing;

namespace {

gmm::DiagonalGmm ToyUbm() {
  gmm::DiagonalGmm g;
  g.weights = Vector(3);
  g.weights << 0.2, 0.5, 0.3;
  g.means = Matrix(3, 2);
  g.means << -1.0, 0.5, 2.0, -0.3, 0.1, 1.7;
  g.variances = Matrix(3, 2);
  g.variances << 0.5, 1.2, 2.0, 0.3, 0.8, 0.9;
  return g;
}

gmm::DiagonalGmm UnitUbm(int k, int d) {
  gmm::DiagonalGmm g;
  g.weights = Vector::Constant(k, 1.0 / k);
  g.means = Matrix::Zero(k, d);
  g.variances = Matrix::Ones(k, d);
  return g;
}

template <typename E>
void CheckThrowsKind(E &&fn, ErrorKind kind) {
  bool thrown = false;
  try {
    fn();
  } catch (const VoxError &e) {
    thrown = true;
    CHECK(e.kind() == kind);
  }
  CHECK(thrown);
}

}  // namespace

TEST_CASE("stats conserve frame mass") {
  Rng rng(3);
  const Matrix x = RandomMatrix(2, 137, rng, 1.5);
  const BaumWelchStats s = AccumulateStats(ToyUbm(), x);
  CHECK(s.n.minCoeff() >= 0.0);
  CHECK(std::abs(s.FrameCount() - 137.0) < 1e-6);
}

TEST_CASE("single component first order stats are centred sums") {
  gmm::DiagonalGmm g;
  g.weights = Vector::Ones(1);
  g.means = Matrix(1, 3);
  g.means << 0.5, -1.0, 2.0;
  g.variances = Matrix::Ones(1, 3);
  Rng rng(5);
  const Matrix x = RandomMatrix(3, 40, rng);
  const BaumWelchStats s = AccumulateStats(g, x);
  CHECK(s.n[0] == 40.0);
  const Vector expect = (x.colwise() - g.means.row(0).transpose()).rowwise().sum();
  CHECK((s.f.row(0).transpose() - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("stats match a per-frame double loop") {
  const gmm::DiagonalGmm g = ToyUbm();
  Rng rng(9);
  const Matrix x = RandomMatrix(2, 50, rng, 1.3);
  Vector n = Vector::Zero(3);
  Matrix f = Matrix::Zero(3, 2);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> lp(3);
    for (int k = 0; k < 3; ++k) {
      double v = std::log(g.weights[k]);
      for (int d = 0; d < 2; ++d) {
        const double var = g.variances(k, d), diff = x(d, t) - g.means(k, d);
        v += -0.5 * std::log(2.0 * M_PI * var) - 0.5 * diff * diff / var;
      }
      lp[k] = v;
    }
    const double mx = *std::max_element(lp.begin(), lp.end());
    double z = 0.0;
    for (double v : lp) z += std::exp(v - mx);
    for (int k = 0; k < 3; ++k) {
      const double gamma = std::exp(lp[k] - mx) / z;
      n[k] += gamma;
      for (int d = 0; d < 2; ++d) f(k, d) += gamma * (x(d, t) - g.means(k, d));
    }
  }
  const BaumWelchStats s = AccumulateStats(g, x);
  CHECK((s.n - n).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((s.f - f).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("stats reject a dimension mismatch") {
  Rng rng(1);
  const Matrix x = RandomMatrix(3, 10, rng);
  CheckThrowsKind([&] { AccumulateStats(ToyUbm(), x); }, ErrorKind::kModelMismatch);
}

TEST_CASE("batch stats equal per-utterance stats") {
  Rng rng(2);
  std::vector<Matrix> utts;
  for (int i = 0; i < 7; ++i) utts.push_back(RandomMatrix(2, 20 + 3 * i, rng));
  const auto batch = AccumulateStatsBatch(ToyUbm(), utts);
  REQUIRE(batch.size() == 7);
  for (int i = 0; i < 7; ++i) {
    const BaumWelchStats s = AccumulateStats(ToyUbm(), utts[static_cast<size_t>(i)]);
    CHECK(s.n == batch[static_cast<size_t>(i)].n);
    CHECK(s.f == batch[static_cast<size_t>(i)].f);
  }
}

TEST_CASE("empty utterance gives the prior mean") {
  const gmm::DiagonalGmm g = ToyUbm();
  const BaumWelchStats s = AccumulateStats(g, Matrix(2, 0));
  CHECK(s.FrameCount() == 0.0);
  TotalVariabilityModel m;
  Rng rng(4);
  m.t = RandomMatrix(6, 3, rng);
  m.variances = g.variances;
  const Vector w = ExtractIvector(m, s);
  REQUIRE(w.size() == 3);
  CHECK(w == Vector::Zero(3));
}

TEST_CASE("i-vector matches a dense linear solve") {
  Rng rng(11);
  TotalVariabilityModel m;
  m.t = RandomMatrix(4, 1, rng);
  m.variances = Matrix(2, 2);
  m.variances << 0.7, 1.3, 2.1, 0.4;
  BaumWelchStats s;
  s.n = Vector(2);
  s.n << 12.0, 5.5;
  s.f = RandomMatrix(2, 2, rng, 3.0);
  Matrix big_n = Matrix::Zero(4, 4), big_s = Matrix::Zero(4, 4);
  Vector f(4);
  for (int k = 0; k < 2; ++k)
    for (int d = 0; d < 2; ++d) {
      big_n(2 * k + d, 2 * k + d) = s.n[k];
      big_s(2 * k + d, 2 * k + d) = m.variances(k, d);
      f[2 * k + d] = s.f(k, d);
    }
  const Matrix si = big_s.inverse();
  const Matrix l = Matrix::Identity(1, 1) + m.t.transpose() * si * big_n * m.t;
  const Vector expect = l.fullPivLu().solve(m.t.transpose() * si * f);
  CHECK((ExtractIvector(m, s) - expect).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((PosteriorPrecision(m, s) - l).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("i-vector matches a dense solve up to sixteen supervector rows") {
  Rng rng(12);
  const int k = 4, d = 4, r = 3;
  TotalVariabilityModel m;
  m.t = RandomMatrix(k * d, r, rng, 0.5);
  m.variances = (RandomMatrix(k, d, rng).array().abs() + 0.2).matrix();
  BaumWelchStats s;
  s.n = (RandomVector(k, rng).array().abs() * 10.0).matrix();
  s.f = RandomMatrix(k, d, rng, 2.0);
  Matrix big = Matrix::Zero(k * d, k * d);
  Vector f(k * d);
  for (int kk = 0; kk < k; ++kk)
    for (int dd = 0; dd < d; ++dd) {
      big(kk * d + dd, kk * d + dd) = s.n[kk] / m.variances(kk, dd);
      f[kk * d + dd] = s.f(kk, dd) / m.variances(kk, dd);
    }
  const Matrix l = Matrix::Identity(r, r) + m.t.transpose() * big * m.t;
  const Vector expect = l.fullPivLu().solve(m.t.transpose() * f);
  CHECK((ExtractIvector(m, s) - expect).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("repeating an utterance moves toward the data-only solution") {
  Rng rng(13);
  TotalVariabilityModel m;
  m.t = RandomMatrix(6, 2, rng);
  m.variances = Matrix::Ones(3, 2);
  BaumWelchStats s;
  s.n = Vector(3);
  s.n << 4.0, 2.0, 3.0;
  s.f = RandomMatrix(3, 2, rng, 2.0);
  BaumWelchStats twice{2.0 * s.n, 2.0 * s.f};
  const Matrix l1 = PosteriorPrecision(m, s) - Matrix::Identity(2, 2);
  Vector b(2);
  b.setZero();
  for (int k = 0; k < 3; ++k)
    for (int d = 0; d < 2; ++d) b += m.t.row(k * 2 + d).transpose() * s.f(k, d);
  const Vector ml = l1.fullPivLu().solve(b);
  const Vector w1 = ExtractIvector(m, s), w2 = ExtractIvector(m, twice);
  CHECK((w2 - ml).norm() < (w1 - ml).norm());
  CHECK(PosteriorPrecision(m, twice).norm() > PosteriorPrecision(m, s).norm());
}

TEST_CASE("extraction rejects mismatched stats") {
  TotalVariabilityModel m;
  m.t = Matrix::Ones(6, 2);
  m.variances = Matrix::Ones(3, 2);
  BaumWelchStats s{Vector::Ones(2), Matrix::Ones(2, 2)};
  CheckThrowsKind([&] { ExtractIvector(m, s); }, ErrorKind::kModelMismatch);
}

TEST_CASE("total variability recovers a planted subspace") {
  const int k = 4, d = 3, r = 2;
  Rng rng(21);
  const Matrix t_true = RandomMatrix(k * d, r, rng);
  const auto stats = StatsFromModel(t_true, k, d, 400, 20.0, rng);
  TvOptions opts;
  opts.rank = r;
  opts.iters = 20;
  opts.seed = 7;
  const TvResult res = TrainTotalVariability(UnitUbm(k, d), stats, opts);
  CHECK(MaxPrincipalAngle(res.model.t, t_true) < 0.2);
  REQUIRE(res.objective.size() == 21);
  for (size_t i = 1; i < res.objective.size(); ++i)
    CHECK(res.objective[i] >= res.objective[i - 1] - 1e-6 * std::abs(res.objective[i - 1]));
}

TEST_CASE("total variability objective rises on ubm stats") {
  Rng rng(22);
  const gmm::DiagonalGmm g = ToyUbm();
  std::vector<Matrix> utts;
  for (int i = 0; i < 30; ++i) {
    Matrix x = RandomMatrix(2, 60, rng);
    x.colwise() += RandomVector(2, rng, 0.8);
    utts.push_back(x);
  }
  const auto stats = AccumulateStatsBatch(g, utts);
  const TvResult res = TrainTotalVariability(g, stats, TvOptions{3, 8, 1});
  for (size_t i = 1; i < res.objective.size(); ++i)
    CHECK(res.objective[i] >= res.objective[i - 1] - 1e-6 * std::abs(res.objective[i - 1]));
}

TEST_CASE("identical utterances give identical i-vectors") {
  Rng rng(23);
  const gmm::DiagonalGmm g = ToyUbm();
  const Matrix x = RandomMatrix(2, 80, rng);
  const std::vector<BaumWelchStats> stats(6, AccumulateStats(g, x));
  const TotalVariabilityModel m = TrainTotalVariability(g, stats, 1, 4, 3);
  const auto w = ExtractIvectors(m, stats);
  for (const auto &v : w) CHECK((v - w.front()).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("total variability needs rank utterances") {
  const gmm::DiagonalGmm g = ToyUbm();
  std::vector<BaumWelchStats> stats(3, BaumWelchStats{Vector::Ones(3), Matrix::Ones(3, 2)});
  CheckThrowsKind([&] { TrainTotalVariability(g, stats, 4, 2, 1); }, ErrorKind::kInsufficientData);
}

TEST_CASE("total variability training is seed deterministic and thread independent") {
  Rng rng(24);
  const Matrix t_true = RandomMatrix(6, 2, rng);
  const auto stats = StatsFromModel(t_true, 3, 2, 150, 10.0, rng);
  SetNumThreads(1);
  const auto a = TrainTotalVariability(UnitUbm(3, 2), stats, 2, 3, 5);
  SetNumThreads(4);
  const auto b = TrainTotalVariability(UnitUbm(3, 2), stats, 2, 3, 5);
  SetNumThreads(1);
  CHECK(a.t == b.t);
}

TEST_CASE("total variability model round trip") {
  Rng rng(25);
  TotalVariabilityModel m;
  m.t = RandomMatrix(6, 2, rng);
  m.variances = Matrix::Constant(3, 2, 0.7);
  std::stringstream ss;
  WriteTv(ss, m);
  const TotalVariabilityModel back = ReadTv(ss);
  CHECK(back.t == m.t);
  CHECK(back.variances == m.variances);
  std::stringstream bad("XXXX");
  CheckThrowsKind([&] { ReadTv(bad); }, ErrorKind::kIo);
}

namespace {

PldaOptions RawOptions() {
  PldaOptions o;
  o.lda = false;
  o.length_norm = false;
  o.iters = 20;
  return o;
}

}  // namespace

TEST_CASE("plda with no within-class scatter") {
  Rng rng(31);
  std::vector<Vector> x;
  std::vector<int> y;
  for (int c = 0; c < 6; ++c) {
    const Vector centre = RandomVector(3, rng, 2.0);
    for (int i = 0; i < 3; ++i) {
      x.push_back(centre);
      y.push_back(c);
    }
  }
  const PldaModel m = TrainPlda(x, y, RawOptions());
  CHECK(m.within_cov().norm() < 1e-6);
  CHECK(m.between_cov().norm() > 0.1);
}

TEST_CASE("plda recovers known two-class covariances") {
  Rng rng(32);
  Matrix w_true(2, 2);
  w_true << 1.0, 0.4, 0.4, 0.6;
  const Eigen::LLT<Matrix> wl(w_true);
  const Matrix wchol = wl.matrixL();
  std::vector<Vector> x, centres;
  std::vector<int> y;
  for (int c = 0; c < 2; ++c) {
    Vector centre = RandomVector(2, rng, 3.0);
    centres.push_back(centre);
    for (int i = 0; i < 1000; ++i) {
      x.push_back(centre + wchol * RandomVector(2, rng));
      y.push_back(c);
    }
  }
  const Vector cm = 0.5 * (centres[0] + centres[1]);
  Matrix b_true = Matrix::Zero(2, 2);
  for (const auto &c : centres) b_true += 0.5 * (c - cm) * (c - cm).transpose();
  const PldaModel m = TrainPlda(x, y, RawOptions());
  CHECK((m.within_cov() - w_true).norm() / w_true.norm() < 0.1);
  CHECK((m.between_cov() - b_true).norm() / b_true.norm() < 0.1);
}

TEST_CASE("plda projection keeps class mean order") {
  Rng rng(33);
  std::vector<Vector> x;
  std::vector<int> y;
  Vector dir(2);
  dir << 1.0, 2.0;
  for (int c = 0; c < 4; ++c)
    for (int i = 0; i < 30; ++i) {
      x.push_back(c * 3.0 * dir + RandomVector(2, rng, 0.3));
      y.push_back(c);
    }
  PldaOptions o;
  o.out_dim = 1;
  o.length_norm = false;
  const PldaModel m = TrainPlda(x, y, o);
  REQUIRE(m.OutputDim() == 1);
  std::vector<double> means(4, 0.0);
  for (size_t i = 0; i < x.size(); ++i) means[static_cast<size_t>(y[i])] += m.Transform(x[i])[0] / 30.0;
  const bool up = std::is_sorted(means.begin(), means.end());
  const bool down = std::is_sorted(means.rbegin(), means.rend());
  CHECK((up || down));
  CHECK(means.front() != means.back());
}

TEST_CASE("plda score symmetry, rotation invariance and zero between covariance") {
  Rng rng(34);
  const Matrix a = RandomMatrix(4, 4, rng);
  const Matrix b = a * a.transpose() + 0.1 * Matrix::Identity(4, 4);
  const PldaModel m = PldaModel::FromParameters(Vector::Zero(4), false, Matrix::Identity(4, 4), Vector::Zero(4),
                                                b, Matrix::Identity(4, 4));
  for (int i = 0; i < 20; ++i) {
    const Vector u = RandomVector(4, rng), v = RandomVector(4, rng);
    CHECK(std::abs(PldaScore(m, u, v) - PldaScore(m, v, u)) < 1e-10);
  }
  const PldaModel iso = PldaModel::FromParameters(Vector::Zero(4), false, Matrix::Identity(4, 4),
                                                  Vector::Zero(4), 2.5 * Matrix::Identity(4, 4),
                                                  Matrix::Identity(4, 4));
  const Matrix rot = Eigen::HouseholderQR<Matrix>(RandomMatrix(4, 4, rng)).householderQ();
  for (int i = 0; i < 20; ++i) {
    const Vector u = RandomVector(4, rng), v = RandomVector(4, rng);
    CHECK(std::abs(PldaScore(iso, u, v) - PldaScore(iso, rot * u, rot * v)) < 1e-10);
  }
  const PldaModel flat = PldaModel::FromParameters(Vector::Zero(4), false, Matrix::Identity(4, 4),
                                                   Vector::Zero(4), Matrix::Zero(4, 4), b);
  const double s0 = PldaScore(flat, RandomVector(4, rng), RandomVector(4, rng));
  for (int i = 0; i < 20; ++i)
    CHECK(std::abs(PldaScore(flat, RandomVector(4, rng, 3.0), RandomVector(4, rng, 3.0)) - s0) < 1e-10);
}

TEST_CASE("plda separates speakers from its own generative model") {
  Rng rng(35);
  const int dim = 10;
  auto sample_class = [&](int count) {
    const Vector y = RandomVector(dim, rng, 1.5);
    std::vector<Vector> out;
    for (int i = 0; i < count; ++i) out.push_back(y + RandomVector(dim, rng));
    return out;
  };
  std::vector<Vector> x;
  std::vector<int> labels;
  for (int c = 0; c < 60; ++c)
    for (auto &v : sample_class(8)) {
      x.push_back(v);
      labels.push_back(c);
    }
  PldaOptions o;
  o.out_dim = 8;
  std::vector<double> history;
  const PldaModel m = TrainPlda(x, labels, o, &history);
  for (size_t i = 1; i < history.size(); ++i)
    CHECK(history[i] >= history[i - 1] - 1e-8 * std::abs(history[i - 1]));
  CHECK((m.between_cov() - m.between_cov().transpose()).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(Eigen::SelfAdjointEigenSolver<Matrix>(m.within_cov()).eigenvalues().minCoeff() >= -1e-8);
  CHECK(Eigen::SelfAdjointEigenSolver<Matrix>(m.between_cov()).eigenvalues().minCoeff() >= -1e-8);

  std::vector<double> tgt, non;
  for (int t = 0; t < 250; ++t) {
    const auto pair = sample_class(2);
    tgt.push_back(PldaScore(m, pair[0], pair[1]));
    non.push_back(PldaScore(m, sample_class(1)[0], sample_class(1)[0]));
  }
  CHECK(Auc(tgt, non) > 0.9);
}

TEST_CASE("plda errors") {
  const PldaModel empty;
  CheckThrowsKind([&] { PldaScore(empty, Vector::Zero(3), Vector::Zero(3)); }, ErrorKind::kModelMismatch);
  Rng rng(36);
  std::vector<Vector> x;
  std::vector<int> y;
  for (int i = 0; i < 12; ++i) {
    Vector v = Vector::Zero(5);
    v.head(2) = RandomVector(2, rng);
    x.push_back(v);
    y.push_back(i % 3);
  }
  PldaOptions o;
  o.out_dim = 4;
  o.length_norm = false;
  CheckThrowsKind([&] { TrainPlda(x, y, o); }, ErrorKind::kInsufficientData);
  std::vector<int> one(12, 0);
  CheckThrowsKind([&] { TrainPlda(x, one, RawOptions()); }, ErrorKind::kInvalidInput);
  o.out_dim = 2;
  const PldaModel m = TrainPlda(x, y, o);
  CheckThrowsKind([&] { PldaScore(m, Vector::Zero(4), Vector::Zero(5)); }, ErrorKind::kModelMismatch);
}

TEST_CASE("plda model round trip") {
  Rng rng(37);
  std::vector<Vector> x;
  std::vector<int> y;
  for (int i = 0; i < 40; ++i) {
    x.push_back(RandomVector(6, rng) + Vector::Constant(6, i % 4));
    y.push_back(i % 4);
  }
  PldaOptions o;
  o.out_dim = 3;
  const PldaModel m = TrainPlda(x, y, o);
  std::stringstream ss;
  WritePlda(ss, m);
  const PldaModel back = ReadPlda(ss);
  CHECK(back.projection() == m.projection());
  CHECK(back.within_cov() == m.within_cov());
  CHECK(PldaScore(back, x[0], x[5]) == PldaScore(m, x[0], x[5]));
}

namespace {

Vector UnitAt(double angle) {
  Vector v(2);
  v << std::cos(angle), std::sin(angle);
  return v;
}

void CircleData(int per_class, Rng &rng, Matrix *x, std::vector<int> *y) {
  x->resize(2 * per_class, 2);
  y->clear();
  for (int i = 0; i < 2 * per_class; ++i) {
    const int c = i % 2;
    const double angle = (c == 0 ? 0.0 : M_PI) + rng.Uniform(-0.6, 0.6);
    x->row(i) = UnitAt(angle).transpose();
    y->push_back(c);
  }
}

}  // namespace

TEST_CASE("svm separates a unit circle toy") {
  Rng rng(41);
  Matrix x, v;
  std::vector<int> y, vy;
  CircleData(40, rng, &x, &y);
  CircleData(20, rng, &v, &vy);
  SvmOptions o;
  o.c_grid = {0.1, 1.0, 10.0};
  SvmReport rep;
  const LinearSvm m = TrainOvrSvm(x, y, v, vy, o, &rep);
  REQUIRE(m.NumClasses() == 2);
  for (Eigen::Index i = 0; i < x.rows(); ++i) CHECK(SvmClassify(m, x.row(i).transpose()) == y[static_cast<size_t>(i)]);
  CHECK(rep.validation_accuracy.size() == 3);
  for (const auto &hist : rep.objective)
    for (size_t i = 1; i < hist.size(); ++i) CHECK(hist[i] <= hist[i - 1]);
}

TEST_CASE("svm picks the smallest of tied C values") {
  Rng rng(42);
  Matrix x, v;
  std::vector<int> y, vy;
  CircleData(30, rng, &x, &y);
  CircleData(10, rng, &v, &vy);
  SvmOptions o;
  o.c_grid = {10.0, 1.0};
  SvmReport rep;
  TrainOvrSvm(x, y, v, vy, o, &rep);
  CHECK(rep.validation_accuracy[0] == rep.validation_accuracy[1]);
  CHECK(rep.chosen_c == 1.0);
}

TEST_CASE("svm single grid value is used") {
  Rng rng(43);
  Matrix x;
  std::vector<int> y;
  CircleData(10, rng, &x, &y);
  SvmOptions o;
  o.c_grid = {3.7};
  const LinearSvm m = TrainOvrSvm(x, y, Matrix(0, 2), {}, o);
  CHECK(m.c == 3.7);
}

TEST_CASE("svm duplicated training set gives the same weights") {
  Rng rng(44);
  Matrix x;
  std::vector<int> y;
  CircleData(15, rng, &x, &y);
  x.row(3) = UnitAt(2.0).transpose();
  Matrix xx(2 * x.rows(), 2);
  xx << x, x;
  std::vector<int> yy = y;
  yy.insert(yy.end(), y.begin(), y.end());
  SvmOptions o;
  o.c_grid = {2.0};
  const LinearSvm a = TrainOvrSvm(x, y, Matrix(0, 2), {}, o);
  const LinearSvm b = TrainOvrSvm(xx, yy, Matrix(0, 2), {}, o);
  const LinearSvm c = TrainOvrSvm(x, y, Matrix(0, 2), {}, o);
  CHECK((a.weights - b.weights).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(a.weights == c.weights);
}

TEST_CASE("svm rejects unnormalised rows") {
  Rng rng(45);
  Matrix x;
  std::vector<int> y;
  CircleData(10, rng, &x, &y);
  x.row(2) *= 1.0 + 1e-5;
  SvmOptions o;
  o.c_grid = {1.0};
  CheckThrowsKind([&] { TrainOvrSvm(x, y, Matrix(0, 2), {}, o); }, ErrorKind::kInvalidInput);
}

TEST_CASE("svm classification rules") {
  LinearSvm one;
  one.weights = Matrix::Zero(1, 3);
  one.weights << 0.3, -0.2, 0.1;
  Rng rng(46);
  for (int i = 0; i < 10; ++i) CHECK(SvmClassify(one, UnitAt(rng.Uniform(0.0, 6.2))) == 0);

  LinearSvm three;
  three.weights = Matrix::Zero(3, 4);
  three.weights.leftCols(3) = 5.0 * Matrix::Identity(3, 3);
  Vector e1 = Vector::Zero(3);
  e1[1] = 1.0;
  CHECK(SvmClassify(three, e1) == 1);
  LinearSvm tied;
  tied.weights = Matrix::Zero(3, 3);
  CHECK(SvmClassify(tied, UnitAt(0.3)) == 0);
  CheckThrowsKind([&] { SvmClassify(three, UnitAt(0.3)); }, ErrorKind::kModelMismatch);
  CheckThrowsKind([&] { SvmClassify(three, 2.0 * e1); }, ErrorKind::kInvalidInput);
}

TEST_CASE("svm argmax ignores a common bias shift") {
  Rng rng(47);
  Matrix x(60, 3);
  std::vector<int> y;
  for (int i = 0; i < 60; ++i) {
    Vector v = RandomVector(3, rng, 0.4);
    v[i % 3] += 1.0;
    x.row(i) = v.normalized().transpose();
    y.push_back(i % 3);
  }
  SvmOptions o;
  o.c_grid = {5.0};
  const LinearSvm m = TrainOvrSvm(x, y, Matrix(0, 3), {}, o);
  LinearSvm shifted = m;
  shifted.weights.col(3).array() += 7.5;
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    CHECK(SvmClassify(m, x.row(i).transpose()) == SvmClassify(shifted, x.row(i).transpose()));
}

TEST_CASE("svm model round trip") {
  LinearSvm m;
  Rng rng(48);
  m.weights = RandomMatrix(4, 6, rng);
  m.c = 10.0;
  std::stringstream ss;
  WriteSvm(ss, m);
  const LinearSvm back = ReadSvm(ss);
  CHECK(back.weights == m.weights);
  CHECK(back.c == 10.0);
}
