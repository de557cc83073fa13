// tests/unit/test_corpus.cc

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

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "oracles.h"
#include "voxkit/audio/features.h"
#include "voxkit/audio/wav.h"
#include "voxkit/corpus/manifest.h"
#include "voxkit/corpus/splits.h"
#include "voxkit/corpus/synth.h"

using namespace voxkit;
using namespace voxkit::corpus;

namespace {

UtteranceRecord Rec(const std::string &poi, const std::string &name, const std::string &video, int u,
                    double dur = 4.0, const std::string &gender = "m") {
  UtteranceRecord r;
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

void AddVideo(Manifest *m, const std::string &poi, const std::string &name, const std::string &video, int n) {
  for (int u = 0; u < n; ++u) m->push_back(Rec(poi, name, video, u));
}

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

void CheckPartition(const Manifest &m, const Split &s) { CHECK(testing::IsPartition(m, s)); }

}  // namespace

TEST_CASE("manifest jsonl round trip and validation") {
  Manifest m;
  AddVideo(&m, "id1", "Alba", "v1", 2);
  std::stringstream ss;
  WriteManifest(ss, m);
  CHECK(ss.str().find("\"utterance_id\":\"v1-0\"") != std::string::npos);
  CHECK(ReadManifest(ss) == m);
  ValidateManifest(m);
  Manifest dup = m;
  dup.push_back(m[0]);
  CheckThrowsKind([&] { ValidateManifest(dup); }, ErrorKind::kInvalidInput);
  Manifest shared = m;
  shared.push_back(Rec("id2", "Bo", "v1", 9));
  CheckThrowsKind([&] { ValidateManifest(shared); }, ErrorKind::kInvalidInput);
  Manifest zero = m;
  zero[0].duration_s = 0.0;
  CheckThrowsKind([&] { ValidateManifest(zero); }, ErrorKind::kInvalidInput);
  std::stringstream bad("{\"poi_id\": \"x\"}\n");
  CheckThrowsKind([&] { ReadManifest(bad); }, ErrorKind::kIo);
}

TEST_CASE("identification split on a hand fixture") {
  Manifest m;
  AddVideo(&m, "p1", "Ann", "p1a", 5);  // only qualifying video
  AddVideo(&m, "p1", "Ann", "p1b", 3);
  AddVideo(&m, "p1", "Ann", "p1c", 4);
  AddVideo(&m, "p2", "Ben", "p2a", 6);
  AddVideo(&m, "p2", "Ben", "p2b", 8);  // most utterances
  AddVideo(&m, "p2", "Ben", "p2c", 2);
  AddVideo(&m, "p3", "Cal", "p3b", 7);
  AddVideo(&m, "p3", "Cal", "p3a", 7);  // tie, smaller id
  AddVideo(&m, "p3", "Cal", "p3c", 1);
  const Split s = IdentificationSplit(m);
  CHECK(s.test.size() == 5 + 8 + 7);
  CHECK(s.dev.size() == 7 + 8 + 8);
  std::set<std::string> test_videos;
  for (const auto &r : s.test) test_videos.insert(r.video_id);
  CHECK(test_videos == std::set<std::string>{"p1a", "p2b", "p3a"});
  CheckPartition(m, s);
}

TEST_CASE("identification split infeasible cases name the POI") {
  Manifest m;
  AddVideo(&m, "p1", "Ann", "p1a", 4);
  AddVideo(&m, "p1", "Ann", "p1b", 4);
  try {
    IdentificationSplit(m);
    FAIL("expected an error");
  } catch (const VoxError &e) {
    CHECK(e.kind() == ErrorKind::kSplitInfeasible);
    CHECK(std::string(e.what()).find("p1") != std::string::npos);
  }
  Manifest single;
  AddVideo(&single, "p9", "Zed", "p9a", 9);
  CheckThrowsKind([&] { IdentificationSplit(single); }, ErrorKind::kSplitInfeasible);
}

TEST_CASE("verification split by initial letter") {
  Manifest m;
  AddVideo(&m, "a", "Elton", "va", 2);
  AddVideo(&m, "b", "Alice", "vb", 2);
  AddVideo(&m, "c", "emma", "vc", 2);
  AddVideo(&m, "d", "  Eve", "vd", 1);
  const Split s = VerificationSplit(m);
  std::set<std::string> test_names, dev_names;
  for (const auto &r : s.test) test_names.insert(r.poi_name);
  for (const auto &r : s.dev) dev_names.insert(r.poi_name);
  CHECK(test_names == std::set<std::string>{"Elton", "emma", "  Eve"});
  CHECK(dev_names == std::set<std::string>{"Alice"});
  CheckPartition(m, s);
  Manifest only_e;
  AddVideo(&only_e, "a", "Elton", "va", 2);
  CheckThrowsKind([&] { VerificationSplit(only_e); }, ErrorKind::kSplitInfeasible);
  Manifest no_e;
  AddVideo(&no_e, "b", "Alice", "vb", 2);
  CheckThrowsKind([&] { VerificationSplit(no_e); }, ErrorKind::kSplitInfeasible);
}

TEST_CASE("splits partition randomized fixtures") {
  Rng rng(5);
  for (int c = 0; c < 1000; ++c) {
    const Manifest m = testing::RandomSplitFixture(rng);
    const size_t pois = PoiIds(m).size();
    const Split id = IdentificationSplit(m);
    CheckPartition(m, id);
    std::set<std::string> dev_pois, test_pois;
    for (const auto &r : id.dev) dev_pois.insert(r.poi_id);
    for (const auto &r : id.test) test_pois.insert(r.poi_id);
    CHECK(dev_pois.size() == pois);
    CHECK(test_pois.size() == pois);
    const Split ver = VerificationSplit(m);
    CheckPartition(m, ver);
    dev_pois.clear();
    test_pois.clear();
    for (const auto &r : ver.dev) dev_pois.insert(r.poi_id);
    for (const auto &r : ver.test) test_pois.insert(r.poi_id);
    for (const auto &p : test_pois) CHECK(dev_pois.count(p) == 0);
  }
}

TEST_CASE("verification split on 1251 fake POIs with 40 E names") {
  Manifest m;
  for (int p = 0; p < 1251; ++p) {
    const std::string name = p < 40 ? "E" + std::to_string(p) : "N" + std::to_string(p);
    m.push_back(Rec("id" + std::to_string(p), name, "v" + std::to_string(p), 0));
  }
  const Split s = VerificationSplit(m);
  CHECK(PoiIds(s.test).size() == 40);
  CHECK(PoiIds(s.dev).size() == 1211);
}

TEST_CASE("corpus stats") {
  Manifest one = {Rec("a", "A", "v", 0, 4.0)};
  const CorpusStats s1 = ComputeCorpusStats(one);
  CHECK(s1.pois == 1);
  CHECK(s1.male_pois == 1);
  CHECK(s1.videos_per_poi.max == 1.0);
  CHECK(s1.videos_per_poi.min == 1.0);
  CHECK(s1.utterance_length_s.avg == 4.0);
  CHECK(s1.utterance_length_s.min == 4.0);

  Manifest m;
  const int counts[] = {8, 18, 36};
  for (int p = 0; p < 3; ++p)
    for (int v = 0; v < counts[p]; ++v)
      m.push_back(Rec("p" + std::to_string(p), "N", "p" + std::to_string(p) + "v" + std::to_string(v), 0, 2.0 + v,
                      p == 1 ? "f" : "m"));
  const CorpusStats s = ComputeCorpusStats(m);
  CHECK(s.pois == 3);
  CHECK(s.male_pois == 2);
  CHECK(s.videos_per_poi.max == 36.0);
  CHECK(s.videos_per_poi.avg == doctest::Approx(20.6667).epsilon(1e-4));
  CHECK(s.videos_per_poi.min == 8.0);
  CHECK(s.utterance_length_s.min <= s.utterance_length_s.avg);
  CHECK(s.utterance_length_s.avg <= s.utterance_length_s.max);
  std::ostringstream os;
  WriteCorpusStats(os, s);
  CHECK(os.str().find("videos_per_poi=36.00/20.67/8.00") != std::string::npos);
  CheckThrowsKind([] { ComputeCorpusStats({}); }, ErrorKind::kInvalidInput);
}

TEST_CASE("synthetic corpus plan") {
  SynthOptions o;
  o.speakers = 10;
  o.videos_per_speaker = 2;
  o.utterances_per_video = 3;
  const Manifest m = PlanCorpus(o);
  REQUIRE(m.size() == 60);
  ValidateManifest(m);
  int e_pois = 0;
  for (const auto &p : PoiIds(m))
    for (const auto &r : m)
      if (r.poi_id == p) {
        e_pois += IsVerificationTestName(r.poi_name);
        break;
      }
  CHECK(e_pois == 2);
  for (const auto &r : m) {
    CHECK(r.duration_s >= 3.0);
    CHECK(r.duration_s <= 8.0);
  }
  SynthOptions bad = o;
  bad.min_duration_s = 0.5;
  CheckThrowsKind([&] { PlanCorpus(bad); }, ErrorKind::kInvalidInput);
  bad = o;
  bad.speakers = 0;
  CheckThrowsKind([&] { PlanCorpus(bad); }, ErrorKind::kInvalidInput);
}

TEST_CASE("synthetic corpus is seed deterministic and thread independent") {
  SynthOptions o;
  o.speakers = 2;
  o.videos_per_speaker = 2;
  o.utterances_per_video = 2;
  o.min_duration_s = 1.0;
  o.max_duration_s = 1.5;
  SetNumThreads(1);
  const SyntheticCorpus a = GenerateCorpus(o);
  SetNumThreads(3);
  const SyntheticCorpus b = GenerateCorpus(o);
  SetNumThreads(1);
  REQUIRE(a.audio.size() == 8);
  for (size_t i = 0; i < a.audio.size(); ++i) CHECK(a.audio[i].samples == b.audio[i].samples);
  o.seed = 43;
  const SyntheticCorpus c = GenerateCorpus(o);
  CHECK(c.audio[0].samples != a.audio[0].samples);
}

TEST_CASE("synthetic corpus written twice is byte identical") {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "voxkit_test_corpus";
  fs::remove_all(root);
  SynthOptions o;
  o.speakers = 2;
  o.videos_per_speaker = 1;
  o.utterances_per_video = 2;
  o.min_duration_s = 1.0;
  o.max_duration_s = 1.2;
  const Manifest m = WriteSyntheticCorpus(o, (root / "a").string());
  WriteSyntheticCorpus(o, (root / "b").string());
  auto slurp = [](const fs::path &p) {
    std::ifstream is(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(is), {});
  };
  CHECK(slurp(root / "a" / "manifest.jsonl") == slurp(root / "b" / "manifest.jsonl"));
  for (const auto &r : m) CHECK(slurp(root / "a" / r.audio_path) == slurp(root / "b" / r.audio_path));
  const AudioBuffer back = LoadAudio16k((root / "a" / m[0].audio_path).string());
  const SyntheticCorpus mem = GenerateCorpus(o);
  CHECK(back.samples == mem.audio[0].samples);
  CHECK(LoadManifest((root / "a" / "manifest.jsonl").string()) == m);
  fs::remove_all(root);
}

TEST_CASE("synthetic speakers are separable by mean spectrum") {
  SynthOptions o;
  o.speakers = 6;
  o.videos_per_speaker = 2;
  o.utterances_per_video = 3;
  o.min_duration_s = 1.5;
  o.max_duration_s = 2.5;
  const SyntheticCorpus c = GenerateCorpus(o);
  std::vector<Vector> means;
  for (const auto &a : c.audio) {
    const Matrix logmag = (ComputeSpectrogram(a).magnitudes.array() + 1e-6).log().matrix();
    means.push_back(logmag.rowwise().mean());
  }
  double within = 0, cross = 0;
  int nw = 0, nc = 0;
  for (size_t i = 0; i < means.size(); ++i)
    for (size_t j = i + 1; j < means.size(); ++j) {
      const double d = (means[i] - means[j]).norm();
      if (c.manifest[i].poi_id == c.manifest[j].poi_id) {
        within += d;
        ++nw;
      } else {
        cross += d;
        ++nc;
      }
    }
  within /= nw;
  cross /= nc;
  MESSAGE("within " << within << " cross " << cross);
  CHECK(within < cross);
}
