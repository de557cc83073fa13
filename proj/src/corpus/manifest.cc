// src/corpus/manifest.cc

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

#include "voxkit/corpus/manifest.h"

#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

#include "voxkit/common.h"

namespace voxkit::corpus {

using nlohmann::json;

void ValidateManifest(const Manifest &m) {
  std::set<std::string> ids;
  std::map<std::string, std::string> video_owner;
  for (const auto &r : m) {
    if (!ids.insert(r.utterance_id).second)
      Fail(ErrorKind::kInvalidInput, "duplicate utterance_id " + r.utterance_id);
    if (!(r.duration_s > 0.0))
      Fail(ErrorKind::kInvalidInput, "utterance " + r.utterance_id + " has non-positive duration");
    auto [it, fresh] = video_owner.emplace(r.video_id, r.poi_id);
    if (!fresh && it->second != r.poi_id)
      Fail(ErrorKind::kInvalidInput, "video " + r.video_id + " belongs to both " + it->second + " and " + r.poi_id);
  }
}

namespace {

json ToJson(const UtteranceRecord &r) {
  return json{{"poi_id", r.poi_id},           {"poi_name", r.poi_name},   {"gender", r.gender},
              {"nationality", r.nationality}, {"video_id", r.video_id},   {"utterance_id", r.utterance_id},
              {"audio_path", r.audio_path},   {"duration_s", r.duration_s}};
}

UtteranceRecord FromJson(const json &j) {
  UtteranceRecord r;
  r.poi_id = j.at("poi_id").get<std::string>();
  r.poi_name = j.at("poi_name").get<std::string>();
  r.gender = j.at("gender").get<std::string>();
  r.nationality = j.at("nationality").get<std::string>();
  r.video_id = j.at("video_id").get<std::string>();
  r.utterance_id = j.at("utterance_id").get<std::string>();
  r.audio_path = j.at("audio_path").get<std::string>();
  r.duration_s = j.at("duration_s").get<double>();
  return r;
}

}  // namespace

Manifest ReadManifest(std::istream &is) {
  Manifest m;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      m.push_back(FromJson(json::parse(line)));
    } catch (const json::exception &e) {
      Fail(ErrorKind::kIo, "manifest line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return m;
}

Manifest LoadManifest(const std::string &path) {
  std::ifstream is(path);
  if (!is) Fail(ErrorKind::kIo, "cannot open " + path);
  return ReadManifest(is);
}

void WriteManifest(std::ostream &os, const Manifest &m) {
  for (const auto &r : m) os << ToJson(r).dump() << '\n';
  if (!os) Fail(ErrorKind::kIo, "failed writing manifest");
}

void SaveManifest(const std::string &path, const Manifest &m) {
  std::ofstream os(path);
  if (!os) Fail(ErrorKind::kIo, "cannot open " + path + " for writing");
  WriteManifest(os, m);
}

void AppendManifest(const std::string &path, const Manifest &m) {
  std::ofstream os(path, std::ios::app);
  if (!os) Fail(ErrorKind::kIo, "cannot open " + path + " for appending");
  WriteManifest(os, m);
}

std::vector<std::string> PoiIds(const Manifest &m) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto &r : m)
    if (seen.insert(r.poi_id).second) out.push_back(r.poi_id);
  return out;
}

}  // namespace voxkit::corpus
