// include/voxkit/eval/trials.h

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

#ifndef VOXKIT_EVAL_TRIALS_H_
#define VOXKIT_EVAL_TRIALS_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "voxkit/corpus/manifest.h"
#include "voxkit/eval/metrics.h"

namespace voxkit::eval {

struct Trial {
  std::string enroll;
  std::string test;
  bool target = false;

  bool operator==(const Trial &) const = default;
};

using TrialList = std::vector<Trial>;

/// Per speaker (in manifest order): pos_per_spk same-speaker pairs, then
/// neg_per_spk pairs against other speakers' utterances, each drawn
/// uniformly without replacement from the pairs not used yet.  When fewer
/// pairs remain, all of them are taken.  Throws kInsufficientData with fewer
/// than two speakers or a speaker with fewer than two utterances.
TrialList BuildTrials(const corpus::Manifest &test, int pos_per_spk, int neg_per_spk, uint64_t seed);

/// `<enroll> <test> <target|nontarget>` lines.
void WriteTrials(std::ostream &os, const TrialList &trials);
TrialList ReadTrials(std::istream &is);

struct ScoreLine {
  std::string enroll;
  std::string test;
  double score = 0.0;
  bool target = false;
};

/// `<enroll> <test> <score> <target|nontarget>` lines.  Throws kIo on a
/// malformed line.
void WriteScores(std::ostream &os, const std::vector<ScoreLine> &lines);
std::vector<ScoreLine> ReadScores(std::istream &is);
std::vector<ScoreLine> LoadScores(const std::string &path);
ScoreSet ToScoreSet(const std::vector<ScoreLine> &lines);

}  // namespace voxkit::eval

#endif  // VOXKIT_EVAL_TRIALS_H_
