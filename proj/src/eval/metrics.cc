// src/eval/metrics.cc

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

#include "voxkit/eval/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace voxkit::eval {

double TopKAccuracy(const Matrix &scores, const std::vector<int> &labels, int k) {
  if (static_cast<size_t>(scores.rows()) != labels.size())
    Fail(ErrorKind::kInvalidInput, "score rows and labels differ in count");
  if (scores.rows() == 0) Fail(ErrorKind::kInvalidInput, "no samples to score");
  const int classes = static_cast<int>(scores.cols());
  if (k < 1 || k > classes) Fail(ErrorKind::kInvalidInput, "k must lie in [1, number of classes]");
  size_t hits = 0;
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    const int y = labels[static_cast<size_t>(i)];
    if (y < 0 || y >= classes) Fail(ErrorKind::kInvalidInput, "label " + std::to_string(y) + " out of range");
    const double s = scores(i, y);
    // Rank of y: classes scoring higher, plus lower-indexed classes that tie.
    int rank = 0;
    for (int c = 0; c < classes; ++c)
      if (scores(i, c) > s || (scores(i, c) == s && c < y)) ++rank;
    hits += rank < k;
  }
  return static_cast<double>(hits) / static_cast<double>(scores.rows());
}

std::vector<DetPoint> DetPoints(const ScoreSet &scores) {
  std::vector<std::pair<double, bool>> sorted;
  sorted.reserve(scores.size());
  size_t n_tar = 0;
  for (const auto &t : scores) {
    if (!std::isfinite(t.score)) Fail(ErrorKind::kInvalidInput, "non-finite trial score");
    sorted.emplace_back(t.score, t.target);
    n_tar += t.target;
  }
  const size_t n_non = scores.size() - n_tar;
  if (n_tar == 0 || n_non == 0)
    Fail(ErrorKind::kInvalidInput, "need both target and non-target trials");
  std::sort(sorted.begin(), sorted.end());
  const double tar = static_cast<double>(n_tar), non = static_cast<double>(n_non);
  std::vector<DetPoint> out;
  out.push_back({-std::numeric_limits<double>::infinity(), 0.0, 1.0});
  size_t missed = 0, rejected = 0;  // trials strictly below the threshold
  for (size_t i = 0; i < sorted.size();) {
    const double th = sorted[i].first;
    out.push_back({th, missed / tar, (non - rejected) / non});
    for (; i < sorted.size() && sorted[i].first == th; ++i) (sorted[i].second ? missed : rejected) += 1;
  }
  out.push_back({std::numeric_limits<double>::infinity(), 1.0, 0.0});
  return out;
}

double Eer(const ScoreSet &scores) {
  const auto pts = DetPoints(scores);
  for (size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].p_miss < pts[i].p_fa) continue;
    if (pts[i].p_miss == pts[i].p_fa || i == 0) return pts[i].p_miss;
    const DetPoint &a = pts[i - 1], &b = pts[i];
    const double gap_a = a.p_fa - a.p_miss, gap_b = b.p_miss - b.p_fa;
    const double t = gap_a / (gap_a + gap_b);
    return a.p_miss + t * (b.p_miss - a.p_miss);
  }
  return 1.0;
}

MinDcf ComputeMinDcf(const ScoreSet &scores, const DcfParams &params) {
  if (!(params.c_miss > 0.0) || !(params.c_fa > 0.0) || !(params.p_tar > 0.0) || !(params.p_tar < 1.0))
    Fail(ErrorKind::kInvalidInput, "DCF parameters must be positive with p_tar in (0, 1)");
  const auto pts = DetPoints(scores);
  MinDcf best;
  best.raw = std::numeric_limits<double>::infinity();
  for (const auto &p : pts) {
    const double c = params.c_miss * p.p_miss * params.p_tar + params.c_fa * p.p_fa * (1.0 - params.p_tar);
    if (c < best.raw) {
      best.raw = c;
      best.threshold = p.threshold;
    }
  }
  best.normalized = best.raw / std::min(params.c_miss * params.p_tar, params.c_fa * (1.0 - params.p_tar));
  return best;
}

}  // namespace voxkit::eval
