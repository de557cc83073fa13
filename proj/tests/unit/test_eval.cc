// tests/unit/test_eval.cc

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

#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "oracles.h"
#include "voxkit/eval/metrics.h"
#include "voxkit/eval/trials.h"

using namespace voxkit;
using namespace voxkit::eval;
using testing::NaiveEer;
using testing::NaiveMinDcf;
using testing::NaivePoints;

namespace {

const ScoreSet kHandSet = {{0.9, true}, {0.4, true}, {0.6, false}, {0.1, false}};

template <typename F>
void CheckThrowsKind(F &&fn, ErrorKind kind) {
  bool thrown = false;
  try {
    fn();
  } catch (const VoxError &e) {
    thrown = true;
    CHECK(e.kind() == kind);
  }
  CHECK(thrown);
}

corpus::UtteranceRecord Rec(const std::string &poi, const std::string &utt) {
  corpus::UtteranceRecord r;
  r.poi_id = poi;
  r.poi_name = poi;
  r.video_id = poi + "_v";
  r.utterance_id = utt;
  r.audio_path = utt + ".wav";
  r.duration_s = 4.0;
  return r;
}

}  // namespace

TEST_CASE("top-k with the true class on top") {
  Matrix s(3, 4);
  s << 5, 1, 2, 3, 0, 9, 1, 2, 1, 1, 7, 0;
  for (int k = 1; k <= 4; ++k) CHECK(TopKAccuracy(s, {0, 1, 2}, k) == 1.0);
}

TEST_CASE("top-k hand matrix") {
  Matrix s(3, 3);
  s << 0.9, 0.5, 0.1,   // label 0: rank 0
      0.7, 0.6, 0.1,    // label 1: rank 1
      0.2, 0.8, 0.3;    // label 2: rank 1
  const std::vector<int> y = {0, 1, 2};
  CHECK(TopKAccuracy(s, y, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(TopKAccuracy(s, y, 2) == 1.0);
  CHECK(TopKAccuracy(s, y, 3) == 1.0);
}

TEST_CASE("top-k ties go to the lower index") {
  Matrix s = Matrix::Constant(2, 3, 1.0);
  CHECK(TopKAccuracy(s, {0, 2}, 1) == 0.5);
  CHECK(TopKAccuracy(s, {0, 2}, 2) == 0.5);
  CHECK(TopKAccuracy(s, {0, 2}, 3) == 1.0);
}

TEST_CASE("top-k non-decreasing in k and errors") {
  Rng rng(1);
  Matrix s(30, 6);
  std::vector<int> y;
  for (int i = 0; i < 30; ++i) {
    for (int c = 0; c < 6; ++c) s(i, c) = rng.Normal();
    y.push_back(static_cast<int>(rng.Index(6)));
  }
  double prev = 0.0;
  for (int k = 1; k <= 6; ++k) {
    const double a = TopKAccuracy(s, y, k);
    CHECK(a >= prev);
    prev = a;
  }
  CHECK(prev == 1.0);
  y[0] = 6;
  CheckThrowsKind([&] { TopKAccuracy(s, y, 1); }, ErrorKind::kInvalidInput);
  y[0] = 0;
  CheckThrowsKind([&] { TopKAccuracy(s, y, 7); }, ErrorKind::kInvalidInput);
}

TEST_CASE("eer on hand sets") {
  CHECK(Eer(kHandSet) == 0.5);
  CHECK(Eer({{2.0, true}, {3.0, true}, {0.0, false}, {1.0, false}}) == 0.0);
  CHECK(Eer({{1.0, true}, {2.0, true}, {3.0, true}, {1.0, false}, {2.0, false}, {3.0, false}}) == doctest::Approx(0.5));
}

TEST_CASE("eer interpolates between operating points") {
  // points: (0,1) (0,1) (0,.5) (.5,.5)... crossing without an exact hit:
  const ScoreSet s = {{1.0, true}, {3.0, true}, {3.0, true}, {2.0, false}, {0.0, false}};
  // thresholds: -inf (0,1) 0 (0,1) 1 (0,.5) 2 (1/3,.5) 3 (1/3,0) +inf (1,0)
  // crossing between 2 and 3: pm 1/3, pfa .5 -> 0
  CHECK(Eer(s) == doctest::Approx(1.0 / 3.0));
  CHECK(NaiveEer(s) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("min dcf on hand sets") {
  const MinDcf d = ComputeMinDcf(kHandSet);
  CHECK(d.raw == doctest::Approx(0.005));
  CHECK(d.normalized == doctest::Approx(0.5));
  CHECK(d.raw == NaiveMinDcf(kHandSet, {}));
  const MinDcf perfect = ComputeMinDcf({{1.0, true}, {0.0, false}});
  CHECK(perfect.raw == 0.0);
  CHECK(perfect.normalized == 0.0);
  const MinDcf worst = ComputeMinDcf({{0.0, true}, {1.0, false}});
  CHECK(worst.raw <= 0.01);
  CHECK(worst.normalized <= 1.0);
}

TEST_CASE("det points endpoints and counts") {
  const auto p = DetPoints(kHandSet);
  REQUIRE(p.size() == 6);
  CHECK(std::isinf(p.front().threshold));
  CHECK(p.front().p_miss == 0.0);
  CHECK(p.front().p_fa == 1.0);
  CHECK(p.back().p_miss == 1.0);
  CHECK(p.back().p_fa == 0.0);
  const auto naive = NaivePoints(kHandSet);
  for (size_t i = 0; i < p.size(); ++i) {
    CHECK(p[i].threshold == naive[i].th);
    CHECK(p[i].p_miss == naive[i].pm);
    CHECK(p[i].p_fa == naive[i].pfa);
  }
}

TEST_CASE("metrics match brute force on random small sets") {
  Rng rng(2024);
  const DcfParams params;
  for (int c = 0; c < 1000; ++c) {
    const ScoreSet s = testing::RandomScoreSet(rng);
    const auto p = DetPoints(s);
    const auto naive = NaivePoints(s);
    REQUIRE(p.size() == naive.size());
    for (size_t i = 0; i < p.size(); ++i) {
      CHECK(p[i].p_miss == naive[i].pm);
      CHECK(p[i].p_fa == naive[i].pfa);
      if (i > 0) {
        CHECK(p[i].p_miss >= p[i - 1].p_miss);
        CHECK(p[i].p_fa <= p[i - 1].p_fa);
      }
    }
    CHECK(Eer(s) == doctest::Approx(NaiveEer(s)).epsilon(1e-12));
    const MinDcf d = ComputeMinDcf(s, params);
    CHECK(d.raw == NaiveMinDcf(s, params));
    CHECK(d.raw <= 0.01);
    CHECK(d.normalized >= 0.0);
    CHECK(d.normalized <= 1.0);
    ScoreSet warped = s;
    for (auto &t : warped) t.score = std::exp(3.0 * t.score) + 7.0;
    CHECK(Eer(warped) == Eer(s));
    CHECK(ComputeMinDcf(warped, params).raw == d.raw);
  }
}

TEST_CASE("metrics reject one-sided score sets") {
  CheckThrowsKind([] { Eer({{1.0, true}, {2.0, true}}); }, ErrorKind::kInvalidInput);
  CheckThrowsKind([] { ComputeMinDcf({{1.0, false}}); }, ErrorKind::kInvalidInput);
  CheckThrowsKind([] { DetPoints({}); }, ErrorKind::kInvalidInput);
  CheckThrowsKind([] { ComputeMinDcf(kHandSet, {1.0, 1.0, 1.0}); }, ErrorKind::kInvalidInput);
}

TEST_CASE("trials forced case") {
  const corpus::Manifest m = {Rec("a", "a1"), Rec("a", "a2"), Rec("b", "b1"), Rec("b", "b2")};
  const TrialList t = BuildTrials(m, 1, 1, 3);
  REQUIRE(t.size() == 4);
  int targets = 0;
  for (const auto &x : t) targets += x.target;
  CHECK(targets == 2);
}

TEST_CASE("trials never repeat a pair and are seed deterministic") {
  corpus::Manifest m;
  for (int s = 0; s < 5; ++s)
    for (int u = 0; u < 2 + s; ++u) m.push_back(Rec("s" + std::to_string(s), "s" + std::to_string(s) + "_" + std::to_string(u)));
  const TrialList t = BuildTrials(m, 4, 6, 11);
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto &x : t) {
    CHECK(x.enroll != x.test);
    const auto key = x.enroll < x.test ? std::make_pair(x.enroll, x.test) : std::make_pair(x.test, x.enroll);
    CHECK(seen.insert(key).second);
    CHECK((x.enroll.substr(0, 2) == x.test.substr(0, 2)) == x.target);
  }
  std::ostringstream a, b;
  WriteTrials(a, t);
  WriteTrials(b, BuildTrials(m, 4, 6, 11));
  CHECK(a.str() == b.str());
  std::istringstream in(a.str());
  CHECK(ReadTrials(in) == t);
  // speaker s0 has one possible same pair
  int s0_targets = 0;
  for (const auto &x : t) s0_targets += x.target && x.enroll.substr(0, 2) == "s0";
  CHECK(s0_targets == 1);
}

TEST_CASE("trials need two utterances per speaker") {
  const corpus::Manifest m = {Rec("a", "a1"), Rec("a", "a2"), Rec("b", "b1")};
  CheckThrowsKind([&] { BuildTrials(m, 1, 1, 1); }, ErrorKind::kInsufficientData);
  const corpus::Manifest one = {Rec("a", "a1"), Rec("a", "a2")};
  CheckThrowsKind([&] { BuildTrials(one, 1, 1, 1); }, ErrorKind::kInsufficientData);
}

TEST_CASE("score file round trip and errors") {
  std::istringstream in("e1 t1 0.9 target\ne2 t2 -1.5e-3 nontarget\n\n");
  const auto lines = ReadScores(in);
  REQUIRE(lines.size() == 2);
  CHECK(lines[1].score == -1.5e-3);
  CHECK(!lines[1].target);
  std::ostringstream out;
  WriteScores(out, lines);
  std::istringstream back(out.str());
  const auto again = ReadScores(back);
  CHECK(again[0].score == 0.9);
  std::istringstream bad("e1 t1 x target\n");
  CheckThrowsKind([&] { ReadScores(bad); }, ErrorKind::kIo);
  std::istringstream bad_label("e1 t1 1.0 maybe\n");
  CheckThrowsKind([&] { ReadScores(bad_label); }, ErrorKind::kIo);
}
