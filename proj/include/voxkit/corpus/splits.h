// include/voxkit/corpus/splits.h

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

#ifndef VOXKIT_CORPUS_SPLITS_H_
#define VOXKIT_CORPUS_SPLITS_H_

#include <ostream>
#include <string>

#include "voxkit/corpus/manifest.h"

namespace voxkit::corpus {

struct Split {
  Manifest dev;
  Manifest test;
};

/// Minimum utterances for a video to serve as a POI's test video.
constexpr int kMinTestVideoUtterances = 5;

/// Per POI, one video goes to test: among videos with at least five
/// utterances the one with the most, then the smallest video_id.  Record
/// order is preserved on both sides.  A POI with fewer than two videos or
/// no qualifying video raises kSplitInfeasible naming the POI.
Split IdentificationSplit(const Manifest &m);

/// True when the first non-blank character of the name is 'E' or 'e'.
bool IsVerificationTestName(const std::string &poi_name);

/// POIs named with an initial E go to test, the rest to dev.  Throws
/// kSplitInfeasible unless both sides are non-empty.
Split VerificationSplit(const Manifest &m);

struct StatTriple {
  double max = 0.0;
  double avg = 0.0;
  double min = 0.0;
};

struct CorpusStats {
  int pois = 0;
  int male_pois = 0;
  StatTriple videos_per_poi;
  StatTriple utterances_per_poi;
  StatTriple utterance_length_s;
};

/// Throws kInvalidInput on an empty manifest.
CorpusStats ComputeCorpusStats(const Manifest &m);

/// key=value lines; triples print as max/avg/min.
void WriteCorpusStats(std::ostream &os, const CorpusStats &s);

}  // namespace voxkit::corpus

#endif  // VOXKIT_CORPUS_SPLITS_H_
