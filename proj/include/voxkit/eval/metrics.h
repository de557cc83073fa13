// include/voxkit/eval/metrics.h

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

#ifndef VOXKIT_EVAL_METRICS_H_
#define VOXKIT_EVAL_METRICS_H_

#include <vector>

#include "voxkit/common.h"

namespace voxkit::eval {

struct ScoredTrial {
  double score = 0.0;
  bool target = false;
};

using ScoreSet = std::vector<ScoredTrial>;

struct DcfParams {
  double c_miss = 1.0;
  double c_fa = 1.0;
  double p_tar = 0.01;
};

/// Operating point: every trial with score >= threshold is accepted.
struct DetPoint {
  double threshold;
  double p_miss;
  double p_fa;
};

struct MinDcf {
  double raw = 0.0;
  /// raw / min(c_miss p_tar, c_fa (1 - p_tar))
  double normalized = 0.0;
  double threshold = 0.0;
};

/// Fraction of rows whose label is among the k highest scores; among equal
/// scores the lower class index ranks first.  scores is [samples x classes].
double TopKAccuracy(const Matrix &scores, const std::vector<int> &labels, int k);

/// Points for -inf, every distinct score in increasing order, then +inf.
/// Throws kInvalidInput without both target and non-target trials or on a
/// non-finite score.
std::vector<DetPoint> DetPoints(const ScoreSet &scores);

/// Crossing of P_miss and P_fa, interpolated linearly between neighbouring
/// operating points.
double Eer(const ScoreSet &scores);

MinDcf ComputeMinDcf(const ScoreSet &scores, const DcfParams &params = {});

}  // namespace voxkit::eval

#endif  // VOXKIT_EVAL_METRICS_H_
