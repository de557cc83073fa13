// src/corpus/splits.cc

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

#include "voxkit/corpus/splits.h"

#include <algorithm>
#include <cctype>
#include <iomanip>
#include <limits>
#include <map>
#include <set>

#include "voxkit/common.h"

namespace voxkit::corpus {

Split IdentificationSplit(const Manifest &m) {
  // poi -> video -> utterance count
  std::map<std::string, std::map<std::string, int>> videos;
  for (const auto &r : m) ++videos[r.poi_id][r.video_id];
  std::map<std::string, std::string> test_video;
  for (const auto &poi : PoiIds(m)) {
    const auto &v = videos[poi];
    if (v.size() < 2)
      Fail(ErrorKind::kSplitInfeasible, "POI " + poi + " has fewer than two videos");
    const std::string *best = nullptr;
    int best_count = 0;
    for (const auto &[vid, count] : v)  // map order: ties keep the smallest id
      if (count >= kMinTestVideoUtterances && count > best_count) {
        best = &vid;
        best_count = count;
      }
    if (!best)
      Fail(ErrorKind::kSplitInfeasible, "POI " + poi + " has no video with at least " +
                                            std::to_string(kMinTestVideoUtterances) + " utterances");
    test_video[poi] = *best;
  }
  Split s;
  for (const auto &r : m) (test_video[r.poi_id] == r.video_id ? s.test : s.dev).push_back(r);
  return s;
}

bool IsVerificationTestName(const std::string &poi_name) {
  for (char c : poi_name) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == 'E' || c == 'e';
  }
  return false;
}

Split VerificationSplit(const Manifest &m) {
  Split s;
  std::map<std::string, bool> side;
  for (const auto &r : m) {
    const bool test = IsVerificationTestName(r.poi_name);
    auto [it, fresh] = side.emplace(r.poi_id, test);
    if (!fresh && it->second != test)
      Fail(ErrorKind::kSplitInfeasible, "POI " + r.poi_id + " appears under differently lettered names");
    (test ? s.test : s.dev).push_back(r);
  }
  if (s.test.empty()) Fail(ErrorKind::kSplitInfeasible, "no POI name starts with E");
  if (s.dev.empty()) Fail(ErrorKind::kSplitInfeasible, "every POI name starts with E");
  return s;
}

namespace {

StatTriple Triple(const std::vector<double> &v) {
  StatTriple t{-std::numeric_limits<double>::infinity(), 0.0, std::numeric_limits<double>::infinity()};
  for (double x : v) {
    t.max = std::max(t.max, x);
    t.min = std::min(t.min, x);
    t.avg += x;
  }
  t.avg /= static_cast<double>(v.size());
  return t;
}

bool IsMale(std::string g) {
  std::transform(g.begin(), g.end(), g.begin(), [](unsigned char c) { return std::tolower(c); });
  return g == "m" || g == "male";
}

}  // namespace

CorpusStats ComputeCorpusStats(const Manifest &m) {
  if (m.empty()) Fail(ErrorKind::kInvalidInput, "statistics of an empty manifest");
  std::map<std::string, std::set<std::string>> videos;
  std::map<std::string, int> utts;
  std::map<std::string, bool> male;
  std::vector<double> lengths;
  for (const auto &r : m) {
    videos[r.poi_id].insert(r.video_id);
    ++utts[r.poi_id];
    male[r.poi_id] = IsMale(r.gender);
    lengths.push_back(r.duration_s);
  }
  CorpusStats s;
  std::vector<double> vpp, upp;
  for (const auto &poi : PoiIds(m)) {
    ++s.pois;
    s.male_pois += male[poi];
    vpp.push_back(static_cast<double>(videos[poi].size()));
    upp.push_back(static_cast<double>(utts[poi]));
  }
  s.videos_per_poi = Triple(vpp);
  s.utterances_per_poi = Triple(upp);
  s.utterance_length_s = Triple(lengths);
  return s;
}

void WriteCorpusStats(std::ostream &os, const CorpusStats &s) {
  auto triple = [&](const char *key, const StatTriple &t) {
    os << key << '=' << t.max << '/' << t.avg << '/' << t.min << '\n';
  };
  const auto flags = os.flags();
  const auto prec = os.precision();
  os << std::fixed << std::setprecision(2);
  os << "pois=" << s.pois << '\n' << "male_pois=" << s.male_pois << '\n';
  triple("videos_per_poi", s.videos_per_poi);
  triple("utterances_per_poi", s.utterances_per_poi);
  triple("utterance_length_s", s.utterance_length_s);
  os.flags(flags);
  os.precision(prec);
}

}  // namespace voxkit::corpus
