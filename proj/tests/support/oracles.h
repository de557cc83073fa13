// tests/support/oracles.h

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

#ifndef VOXKIT_TESTS_ORACLES_H_
#define VOXKIT_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "voxkit/common.h"
#include "voxkit/corpus/manifest.h"
#include "voxkit/corpus/splits.h"
#include "voxkit/eval/metrics.h"
#include "voxkit/ivector/baum_welch.h"
#include "voxkit/ivector/total_variability.h"

// Brute-force references shared by the unit tests and the acceptance run.

namespace voxkit::testing {

// ---- detection metrics

struct NaivePoint {
  double th, pm, pfa;
};

/// Recounts every trial at every candidate threshold.
inline std::vector<NaivePoint> NaivePoints(const eval::ScoreSet &s) {
  std::set<double> th = {-INFINITY, INFINITY};
  for (const auto &t : s) th.insert(t.score);
  std::vector<NaivePoint> out;
  for (double x : th) {
    double miss = 0, fa = 0, nt = 0, nn = 0;
    for (const auto &t : s) {
      const bool accept = t.score >= x;
      if (t.target) {
        ++nt;
        miss += !accept;
      } else {
        ++nn;
        fa += accept;
      }
    }
    out.push_back({x, miss / nt, fa / nn});
  }
  return out;
}

inline double NaiveEer(const eval::ScoreSet &s) {
  const auto p = NaivePoints(s);
  for (size_t i = 0; i + 1 < p.size(); ++i) {
    const double d0 = p[i].pm - p[i].pfa, d1 = p[i + 1].pm - p[i + 1].pfa;
    if (d0 == 0.0) return p[i].pm;
    if (d0 < 0.0 && d1 >= 0.0) {
      const double t = -d0 / (d1 - d0);
      return p[i].pm + t * (p[i + 1].pm - p[i].pm);
    }
  }
  return p.back().pm;
}

inline double NaiveMinDcf(const eval::ScoreSet &s, const eval::DcfParams &d) {
  double best = INFINITY;
  for (const auto &p : NaivePoints(s))
    best = std::min(best, d.c_miss * p.pm * d.p_tar + d.c_fa * p.pfa * (1.0 - d.p_tar));
  return best;
}

/// 2..12 trials on a coarse score grid (ties are common), both classes
/// present.
inline eval::ScoreSet RandomScoreSet(Rng &rng) {
  for (;;) {
    const int n = static_cast<int>(rng.IntInRange(2, 12));
    eval::ScoreSet s;
    for (int i = 0; i < n; ++i)
      s.push_back({static_cast<double>(rng.IntInRange(0, 6)) * 0.5 - 1.0, rng.Uniform() < 0.5});
    bool has_t = false, has_n = false;
    for (const auto &t : s) (t.target ? has_t : has_n) = true;
    if (has_t && has_n) return s;
  }
}

inline double Auc(const std::vector<double> &target, const std::vector<double> &nontarget) {
  double wins = 0.0;
  for (double t : target)
    for (double n : nontarget) wins += t > n ? 1.0 : (t == n ? 0.5 : 0.0);
  return wins / (static_cast<double>(target.size()) * static_cast<double>(nontarget.size()));
}

// ---- linear algebra

inline Matrix RandomMatrix(int rows, int cols, Rng &rng, double sd = 1.0) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = sd * rng.Normal();
  return m;
}

inline Vector RandomVector(int n, Rng &rng, double sd = 1.0) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = sd * rng.Normal();
  return v;
}

/// Largest principal angle between the column spaces of a and b.
inline double MaxPrincipalAngle(const Matrix &a, const Matrix &b) {
  const Matrix qa = Eigen::HouseholderQR<Matrix>(a).householderQ() * Matrix::Identity(a.rows(), a.cols());
  const Matrix qb = Eigen::HouseholderQR<Matrix>(b).householderQ() * Matrix::Identity(b.rows(), b.cols());
  Eigen::JacobiSVD<Matrix> svd(qa.transpose() * qb);
  return std::acos(std::clamp(svd.singularValues().minCoeff(), -1.0, 1.0));
}

/// Posterior mean of w from the full supervector system
/// (I + T' S^-1 N T) w = T' S^-1 F, built as dense KD x KD matrices.
inline Vector DenseIvector(const ivector::TotalVariabilityModel &m, const ivector::BaumWelchStats &s) {
  const int k = m.NumComponents(), d = m.Dim(), r = m.Rank();
  Matrix big = Matrix::Zero(k * d, k * d);
  Vector f(k * d);
  for (int kk = 0; kk < k; ++kk)
    for (int dd = 0; dd < d; ++dd) {
      big(kk * d + dd, kk * d + dd) = s.n[kk] / m.variances(kk, dd);
      f[kk * d + dd] = s.f(kk, dd) / m.variances(kk, dd);
    }
  const Matrix l = Matrix::Identity(r, r) + m.t.transpose() * big * m.t;
  return l.fullPivLu().solve(m.t.transpose() * f);
}

/// Stats drawn from the total variability model itself: f_k = n_k T_k w +
/// sqrt(n_k) * noise, unit variances and zero UBM means.
inline std::vector<ivector::BaumWelchStats> StatsFromModel(const Matrix &t, int k, int d, int count,
                                                           double frames_per_comp, Rng &rng) {
  std::vector<ivector::BaumWelchStats> out;
  const int r = static_cast<int>(t.cols());
  for (int u = 0; u < count; ++u) {
    const Vector w = RandomVector(r, rng);
    ivector::BaumWelchStats s;
    s.n = Vector::Constant(k, frames_per_comp);
    s.f.resize(k, d);
    for (int kk = 0; kk < k; ++kk)
      for (int dd = 0; dd < d; ++dd)
        s.f(kk, dd) = frames_per_comp * t.row(kk * d + dd).dot(w) + std::sqrt(frames_per_comp) * rng.Normal();
    out.push_back(std::move(s));
  }
  return out;
}

// ---- manifests

inline corpus::UtteranceRecord FakeRecord(const std::string &poi, const std::string &name,
                                          const std::string &video, int u, double dur = 4.0,
                                          const std::string &gender = "m") {
  corpus::UtteranceRecord r;
  r.poi_id = poi;
  r.poi_name = name;
  r.gender = gender;
  r.nationality = "X";
  r.video_id = video;
  r.utterance_id = video + "-" + std::to_string(u);
  r.audio_path = r.utterance_id + ".wav";
  r.duration_s = dur;
  return r;
}

/// 2..6 POIs with 2..4 videos each; the first video of every POI has 5..7
/// utterances so an identification split always exists.  Shuffled.
inline corpus::Manifest RandomSplitFixture(Rng &rng) {
  static const char *names[] = {"Eva", "Bob", "eli", "Carl", "Dina", "Ezra", "Finn"};
  corpus::Manifest m;
  const int pois = static_cast<int>(rng.IntInRange(2, 6));
  for (int p = 0; p < pois; ++p) {
    const std::string poi = "p" + std::to_string(p);
    const std::string name = p == 0 ? "Eva" : (p == 1 ? "Bob" : names[rng.Index(7)]);
    const int videos = static_cast<int>(rng.IntInRange(2, 4));
    for (int v = 0; v < videos; ++v) {
      const int n = v == 0 ? 5 + static_cast<int>(rng.Index(3)) : static_cast<int>(rng.IntInRange(1, 9));
      for (int u = 0; u < n; ++u) m.push_back(FakeRecord(poi, name, poi + "v" + std::to_string(v), u));
    }
  }
  rng.Shuffle(m.begin(), m.end());
  return m;
}

/// dev and test are disjoint, duplicate-free and cover m.
inline bool IsPartition(const corpus::Manifest &m, const corpus::Split &s) {
  std::set<std::string> all, dev, test;
  for (const auto &r : m) all.insert(r.utterance_id);
  for (const auto &r : s.dev) dev.insert(r.utterance_id);
  for (const auto &r : s.test) test.insert(r.utterance_id);
  if (dev.size() != s.dev.size() || test.size() != s.test.size()) return false;
  if (dev.size() + test.size() != all.size()) return false;
  std::set<std::string> uni = dev;
  uni.insert(test.begin(), test.end());
  return uni == all;
}

}  // namespace voxkit::testing

#endif  // VOXKIT_TESTS_ORACLES_H_
