// include/voxkit/nn/trainer.h

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

#ifndef VOXKIT_NN_TRAINER_H_
#define VOXKIT_NN_TRAINER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "voxkit/audio/features.h"
#include "voxkit/nn/network.h"

namespace voxkit::nn {

/// SGD hyper-parameters.  Weight decay applies to conv/fc weights only.
struct TrainHyper {
  double lr = 1e-2;
  double momentum = 0.9;
  double weight_decay = 5e-4;
  int batch_size = 16;
  int epochs = 10;
  uint64_t seed = 42;
  /// lr *= plateau_factor after `plateau_patience` epochs without the epoch
  /// loss improving on the best by more than plateau_tolerance (relative).
  double plateau_factor = 0.1;
  int plateau_patience = 2;
  double plateau_tolerance = 1e-3;
  /// Also evaluate the loss over a fixed crop of every example before
  /// training and after each epoch (train-mode batchnorm, no updates).
  bool track_full_loss = false;
  bool verbose = false;

  std::string ToKeyValue() const;
};

struct TrainHistory {
  std::vector<double> epoch_loss;   // mean minibatch loss during each epoch
  std::vector<double> full_loss;    // [before training, after epoch 1, ...]
  std::vector<double> lr;           // learning rate used in each epoch
};

/// Momentum SGD with a velocity buffer per parameter tensor.
class SgdOptimizer {
 public:
  SgdOptimizer(double momentum, double weight_decay)
      : momentum_(momentum), weight_decay_(weight_decay) {}

  /// Applies one update from the accumulated gradients of every unfrozen
  /// parameter, then clears those gradients.
  void Step(Network *net, double lr);

 private:
  double momentum_, weight_decay_;
  std::vector<std::vector<double>> velocity_;
};

/// Classification training on random 3 s crops.  `spectrograms` are
/// normalised and at least 300 frames long; labels lie in [0, K) and every
/// class must occur.  Deterministic given hyper.seed.
TrainHistory TrainClassifier(Network *net, const std::vector<Spectrogram> &spectrograms,
                             const std::vector<int> &labels, const TrainHyper &hyper);

/// Stacks equally sized spectrograms into an [N, 1, 512, T] batch.
Tensor StackBatch(const std::vector<const Matrix *> &specs);

}  // namespace voxkit::nn

#endif  // VOXKIT_NN_TRAINER_H_
