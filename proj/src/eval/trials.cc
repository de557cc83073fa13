// src/eval/trials.cc

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

#include "voxkit/eval/trials.h"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "voxkit/common.h"

namespace voxkit::eval {

namespace {

using PairKey = std::pair<size_t, size_t>;

PairKey Key(size_t a, size_t b) { return a < b ? PairKey{a, b} : PairKey{b, a}; }

// Draws up to `count` distinct pairs from `candidates` that are not yet in
// `used`; the candidate order is fixed, so the draw depends only on the seed.
std::vector<PairKey> Draw(std::vector<PairKey> candidates, size_t count, std::set<PairKey> *used, Rng &rng) {
  std::erase_if(candidates, [&](const PairKey &p) { return used->count(Key(p.first, p.second)) > 0; });
  const size_t take = std::min(count, candidates.size());
  for (size_t i = 0; i < take; ++i) {
    const size_t j = i + rng.Index(candidates.size() - i);
    std::swap(candidates[i], candidates[j]);
    used->insert(Key(candidates[i].first, candidates[i].second));
  }
  candidates.resize(take);
  return candidates;
}

bool ParseLabel(const std::string &s) {
  if (s == "target") return true;
  if (s == "nontarget") return false;
  Fail(ErrorKind::kIo, "trial label must be target or nontarget, got '" + s + "'");
}

}  // namespace

TrialList BuildTrials(const corpus::Manifest &test, int pos_per_spk, int neg_per_spk, uint64_t seed) {
  if (pos_per_spk < 0 || neg_per_spk < 0) Fail(ErrorKind::kInvalidInput, "trial counts must be non-negative");
  std::map<std::string, std::vector<size_t>> by_spk;
  for (size_t i = 0; i < test.size(); ++i) by_spk[test[i].poi_id].push_back(i);
  const auto order = corpus::PoiIds(test);
  if (order.size() < 2) Fail(ErrorKind::kInsufficientData, "trials need at least two speakers");
  for (const auto &spk : order)
    if (by_spk[spk].size() < 2)
      Fail(ErrorKind::kInsufficientData, "speaker " + spk + " has fewer than two utterances");

  Rng rng(DeriveSeed(seed, 0x7A1));
  std::set<PairKey> used;
  TrialList out;
  for (const auto &spk : order) {
    const auto &mine = by_spk[spk];
    std::vector<PairKey> same;
    for (size_t a = 0; a < mine.size(); ++a)
      for (size_t b = a + 1; b < mine.size(); ++b) same.emplace_back(mine[a], mine[b]);
    for (const auto &[e, t] : Draw(std::move(same), static_cast<size_t>(pos_per_spk), &used, rng))
      out.push_back({test[e].utterance_id, test[t].utterance_id, true});

    std::vector<PairKey> cross;
    for (size_t e : mine)
      for (size_t t = 0; t < test.size(); ++t)
        if (test[t].poi_id != spk) cross.emplace_back(e, t);
    for (const auto &[e, t] : Draw(std::move(cross), static_cast<size_t>(neg_per_spk), &used, rng))
      out.push_back({test[e].utterance_id, test[t].utterance_id, false});
  }
  return out;
}

void WriteTrials(std::ostream &os, const TrialList &trials) {
  for (const auto &t : trials) os << t.enroll << ' ' << t.test << ' ' << (t.target ? "target" : "nontarget") << '\n';
  if (!os) Fail(ErrorKind::kIo, "failed writing trials");
}

TrialList ReadTrials(std::istream &is) {
  TrialList out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    Trial t;
    std::string label, extra;
    if (!(ls >> t.enroll)) continue;
    if (!(ls >> t.test >> label) || (ls >> extra))
      Fail(ErrorKind::kIo, "malformed trial line " + std::to_string(lineno));
    t.target = ParseLabel(label);
    out.push_back(std::move(t));
  }
  return out;
}

void WriteScores(std::ostream &os, const std::vector<ScoreLine> &lines) {
  os << std::setprecision(17);
  for (const auto &l : lines)
    os << l.enroll << ' ' << l.test << ' ' << l.score << ' ' << (l.target ? "target" : "nontarget") << '\n';
  if (!os) Fail(ErrorKind::kIo, "failed writing scores");
}

std::vector<ScoreLine> ReadScores(std::istream &is) {
  std::vector<ScoreLine> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    ScoreLine s;
    std::string score, label, extra;
    if (!(ls >> s.enroll)) continue;
    if (!(ls >> s.test >> score >> label) || (ls >> extra))
      Fail(ErrorKind::kIo, "malformed score line " + std::to_string(lineno));
    try {
      size_t used = 0;
      s.score = std::stod(score, &used);
      if (used != score.size()) throw std::invalid_argument(score);
    } catch (const std::exception &) {
      Fail(ErrorKind::kIo, "bad score '" + score + "' on line " + std::to_string(lineno));
    }
    s.target = ParseLabel(label);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<ScoreLine> LoadScores(const std::string &path) {
  std::ifstream is(path);
  if (!is) Fail(ErrorKind::kIo, "cannot open " + path);
  return ReadScores(is);
}

ScoreSet ToScoreSet(const std::vector<ScoreLine> &lines) {
  ScoreSet out;
  out.reserve(lines.size());
  for (const auto &l : lines) out.push_back({l.score, l.target});
  return out;
}

}  // namespace voxkit::eval
