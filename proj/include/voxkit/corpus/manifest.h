// include/voxkit/corpus/manifest.h

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

#ifndef VOXKIT_CORPUS_MANIFEST_H_
#define VOXKIT_CORPUS_MANIFEST_H_

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace voxkit::corpus {

struct UtteranceRecord {
  std::string poi_id;
  std::string poi_name;
  std::string gender;  // "m" / "f"
  std::string nationality;
  std::string video_id;
  std::string utterance_id;
  std::string audio_path;
  double duration_s = 0.0;

  bool operator==(const UtteranceRecord &) const = default;
};

using Manifest = std::vector<UtteranceRecord>;

/// Throws kInvalidInput on a duplicate utterance_id, a non-positive
/// duration, or a video_id shared by two POIs.
void ValidateManifest(const Manifest &m);

/// One JSON object per line.  Blank lines are skipped; malformed lines and
/// missing fields throw kIo with the line number.
Manifest ReadManifest(std::istream &is);
Manifest LoadManifest(const std::string &path);
void WriteManifest(std::ostream &os, const Manifest &m);
void SaveManifest(const std::string &path, const Manifest &m);
/// Appends records to an existing (or new) manifest file.
void AppendManifest(const std::string &path, const Manifest &m);

/// Distinct POI ids in first-appearance order.
std::vector<std::string> PoiIds(const Manifest &m);

}  // namespace voxkit::corpus

#endif  // VOXKIT_CORPUS_MANIFEST_H_
