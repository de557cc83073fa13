// src/nn/siamese.cc

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

#include "voxkit/nn/siamese.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>

#include "voxkit/nn/inference.h"
#include "voxkit/nn/losses.h"
#include "voxkit/nn/trainer.h"

namespace voxkit::nn {

Network MakeEmbeddingNet(const Network &trained, int embed_dim, uint64_t seed) {
  if (!trained.HasLayer("fc8")) Fail(ErrorKind::kInvalidInput, "network has no fc8 layer");
  if (embed_dim < 1) Fail(ErrorKind::kInvalidInput, "embedding dimension must be positive");
  Network net = trained;
  for (auto &l : net.layers()) l.frozen = true;
  Layer &fc8 = net.layer("fc8");
  const Shape ws = fc8.weight.shape();
  fc8 = MakeFullyConnected("fc8", ws.c, embed_dim, ws.h, ws.w, DeriveSeed(seed, 0xE3B));
  fc8.frozen = false;
  return net;
}

PairPool::PairPool(std::vector<int> speakers, const Matrix &embeddings)
    : speakers_(std::move(speakers)) {
  const int n = static_cast<int>(speakers_.size());
  if (embeddings.rows() != n) Fail(ErrorKind::kInvalidInput, "one embedding per utterance required");
  if (std::set<int>(speakers_.begin(), speakers_.end()).size() < 2)
    Fail(ErrorKind::kInvalidInput, "pair sampling needs at least two speakers");
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (speakers_[static_cast<size_t>(i)] == speakers_[static_cast<size_t>(j)]) {
        positives_.emplace_back(i, j);
      } else {
        negatives_.emplace_back(i, j);
        neg_distance_.push_back((embeddings.row(i) - embeddings.row(j)).norm());
      }
    }
  }
  std::vector<size_t> order(negatives_.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return neg_distance_[a] < neg_distance_[b]; });
  const auto count = std::max<size_t>(
      1, static_cast<size_t>(std::ceil(kHardFraction * static_cast<double>(order.size()))));
  hard_.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count));
  hard_cutoff_ = neg_distance_[hard_.back()];
}

bool PairPool::IsHard(int a, int b) const {
  if (a > b) std::swap(a, b);
  for (size_t k : hard_)
    if (negatives_[k].first == a && negatives_[k].second == b) return true;
  return false;
}

PairBatch PairPool::Sample(int batch, uint64_t seed) const {
  if (batch < 1) Fail(ErrorKind::kInvalidInput, "batch must be positive");
  Rng rng(seed);
  PairBatch out;
  const int n_pos = positives_.empty() ? 0 : batch / 2;
  for (int i = 0; i < n_pos; ++i) {
    const auto &p = positives_[rng.Index(positives_.size())];
    out.pairs.push_back({p.first, p.second, true, false});
  }
  for (int i = n_pos; i < batch; ++i) {
    const bool hard = rng.Uniform() < 0.5;
    const size_t k = hard ? hard_[rng.Index(hard_.size())] : rng.Index(negatives_.size());
    out.pairs.push_back({negatives_[k].first, negatives_[k].second, false, hard});
  }
  return out;
}

PairBatch SamplePairs(const std::vector<int> &speakers, const Matrix &embeddings, int batch,
                      uint64_t seed) {
  return PairPool(speakers, embeddings).Sample(batch, seed);
}

SiameseHistory TrainSiamese(Network *net, const std::vector<Spectrogram> &spectrograms,
                            const std::vector<int> &speakers, const SiameseHyper &hyper) {
  if (spectrograms.size() != speakers.size() || spectrograms.empty())
    Fail(ErrorKind::kInvalidInput, "spectrogram/speaker count mismatch");
  for (const auto &s : spectrograms)
    if (s.Frames() < kCropFrames) Fail(ErrorKind::kInvalidInput, "utterance shorter than 300 frames");
  SiameseHistory hist;
  SgdOptimizer opt(hyper.momentum, hyper.weight_decay);
  net->ZeroGrad();
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    Matrix emb(static_cast<Eigen::Index>(spectrograms.size()), net->OutputDim());
    for (size_t i = 0; i < spectrograms.size(); ++i)
      emb.row(static_cast<Eigen::Index>(i)) = Embed(*net, spectrograms[i]).transpose();
    PairPool pool(speakers, emb);
    double epoch_sum = 0.0;
    for (int step = 0; step < hyper.steps_per_epoch; ++step) {
      const uint64_t step_seed = DeriveSeed(hyper.seed, static_cast<uint64_t>(epoch),
                                            static_cast<uint64_t>(step));
      PairBatch batch = pool.Sample(hyper.pairs_per_step, step_seed);
      const size_t p = batch.pairs.size();
      std::vector<Spectrogram> crops(2 * p);
      std::vector<bool> same(p);
      for (size_t i = 0; i < p; ++i) {
        const auto &pr = batch.pairs[i];
        crops[i] = RandomCrop3s(spectrograms[static_cast<size_t>(pr.a)], DeriveSeed(step_seed, 2 * i));
        crops[p + i] =
            RandomCrop3s(spectrograms[static_cast<size_t>(pr.b)], DeriveSeed(step_seed, 2 * i + 1));
        same[i] = pr.same;
      }
      std::vector<const Matrix *> ptrs;
      for (auto &c : crops) ptrs.push_back(&c.magnitudes);
      Matrix out = TensorToRows(net->Forward(StackBatch(ptrs), Mode::kTrain));
      Matrix ga, gb;
      const auto pi = static_cast<Eigen::Index>(p);
      const double loss =
          PairContrastiveLoss(out.topRows(pi), out.bottomRows(pi), same, hyper.margin, &ga, &gb);
      Matrix g(out.rows(), out.cols());
      g << ga, gb;
      Tensor grad = RowsToTensor(g);
      net->Backward(grad);
      opt.Step(net, hyper.lr);
      hist.step_loss.push_back(loss);
      epoch_sum += loss;
    }
    hist.epoch_loss.push_back(epoch_sum / std::max(1, hyper.steps_per_epoch));
    if (hyper.verbose)
      std::fprintf(stderr, "siamese epoch %d loss %.5f\n", epoch + 1, hist.epoch_loss.back());
  }
  return hist;
}

}  // namespace voxkit::nn
