// include/voxkit/nn/siamese.h

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

#ifndef VOXKIT_NN_SIAMESE_H_
#define VOXKIT_NN_SIAMESE_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "voxkit/audio/features.h"
#include "voxkit/nn/network.h"

namespace voxkit::nn {

/// Copies a trained classifier, replaces fc8 with a freshly initialised
/// layer of `embed_dim` outputs and freezes every other layer.
Network MakeEmbeddingNet(const Network &trained, int embed_dim = 1024, uint64_t seed = 42);

struct PairSample {
  int a = 0, b = 0;
  bool same = false;
  bool hard = false;  // negative drawn from the hardest-decile pool
};

struct PairBatch {
  std::vector<PairSample> pairs;
};

/// Candidate pairs over a set of utterances with their current embeddings.
/// Negatives are ranked by Euclidean embedding distance; the closest 10%
/// form the hard pool.
class PairPool {
 public:
  static constexpr double kHardFraction = 0.1;

  /// speakers[i] is the speaker of utterance i, embeddings.row(i) its
  /// embedding.  Throws kInvalidInput with fewer than two speakers.
  PairPool(std::vector<int> speakers, const Matrix &embeddings);

  /// batch / 2 uniform positives (if any exist), the rest negatives: each
  /// negative is drawn from the hard pool with probability 1/2, otherwise
  /// uniformly from all cross-speaker pairs.
  PairBatch Sample(int batch, uint64_t seed) const;

  const std::vector<std::pair<int, int>> &positives() const { return positives_; }
  const std::vector<std::pair<int, int>> &negatives() const { return negatives_; }
  /// Indices into negatives(), closest first.
  const std::vector<size_t> &hard() const { return hard_; }
  /// Largest distance inside the hard pool.
  double hard_cutoff() const { return hard_cutoff_; }
  bool IsHard(int a, int b) const;
  const std::vector<int> &speakers() const { return speakers_; }

 private:
  std::vector<int> speakers_;
  std::vector<std::pair<int, int>> positives_, negatives_;
  std::vector<double> neg_distance_;
  std::vector<size_t> hard_;
  double hard_cutoff_ = 0.0;
};

PairBatch SamplePairs(const std::vector<int> &speakers, const Matrix &embeddings, int batch,
                      uint64_t seed);

struct SiameseHyper {
  double lr = 1e-2;
  double momentum = 0.9;
  double weight_decay = 5e-4;
  double margin = 1.0;
  int pairs_per_step = 32;
  int steps_per_epoch = 20;
  int epochs = 5;
  uint64_t seed = 42;
  bool verbose = false;
};

struct SiameseHistory {
  std::vector<double> step_loss;
  std::vector<double> epoch_loss;
};

/// Contrastive training of the unfrozen layers on random 3 s crops.  Pair
/// pools are rebuilt from whole-utterance embeddings at the start of every
/// epoch.
SiameseHistory TrainSiamese(Network *net, const std::vector<Spectrogram> &spectrograms,
                            const std::vector<int> &speakers, const SiameseHyper &hyper);

}  // namespace voxkit::nn

#endif  // VOXKIT_NN_SIAMESE_H_
