// src/nn/trainer.cc

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

#include "voxkit/nn/trainer.h"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "voxkit/nn/losses.h"

namespace voxkit::nn {

std::string TrainHyper::ToKeyValue() const {
  std::ostringstream os;
  os.precision(17);
  os << "lr=" << lr << "\nmomentum=" << momentum << "\nweight_decay=" << weight_decay
     << "\nbatch_size=" << batch_size << "\nepochs=" << epochs << "\nseed=" << seed
     << "\nplateau_factor=" << plateau_factor << "\nplateau_patience=" << plateau_patience << "\n";
  return os.str();
}

void SgdOptimizer::Step(Network *net, double lr) {
  auto params = net->Params();
  if (velocity_.size() != params.size()) {
    velocity_.clear();
    for (auto &p : params) velocity_.emplace_back(p.value->size(), 0.0);
  }
  for (size_t i = 0; i < params.size(); ++i) {
    Tensor *t = params[i].value;
    if (!t->has_grad()) continue;
    auto g = t->grad();
    auto w = t->values();
    auto &v = velocity_[i];
    const double decay = params[i].decay ? weight_decay_ : 0.0;
    for (size_t k = 0; k < w.size(); ++k) {
      v[k] = momentum_ * v[k] - lr * (g[k] + decay * w[k]);
      w[k] += v[k];
    }
    t->ZeroGrad();
  }
}

Tensor StackBatch(const std::vector<const Matrix *> &specs) {
  const int n = static_cast<int>(specs.size());
  const int h = static_cast<int>(specs.front()->rows());
  const int w = static_cast<int>(specs.front()->cols());
  Tensor t(Shape{n, 1, h, w});
  for (int i = 0; i < n; ++i) {
    const Matrix &m = *specs[static_cast<size_t>(i)];
    if (m.rows() != h || m.cols() != w) Fail(ErrorKind::kInvalidInput, "batch members differ in size");
    double *dst = t.data() + static_cast<size_t>(i) * h * w;
    for (int r = 0; r < h; ++r)
      for (int c = 0; c < w; ++c) dst[static_cast<size_t>(r) * w + c] = m(r, c);
  }
  return t;
}

namespace {

double FullPassLoss(Network *net, const std::vector<Spectrogram> &specs,
                    const std::vector<int> &labels, const TrainHyper &hyper) {
  // Save and restore the running statistics: this pass must not train.
  std::vector<std::pair<std::vector<double>, std::vector<double>>> saved;
  for (auto &l : net->layers()) saved.emplace_back(l.running_mean, l.running_var);
  double total = 0.0;
  const size_t n = specs.size();
  for (size_t start = 0; start < n; start += static_cast<size_t>(hyper.batch_size)) {
    const size_t end = std::min(n, start + static_cast<size_t>(hyper.batch_size));
    std::vector<Spectrogram> crops;
    std::vector<int> ys;
    for (size_t i = start; i < end; ++i) {
      crops.push_back(RandomCrop3s(specs[i], DeriveSeed(hyper.seed, 0xE7A1, i)));
      ys.push_back(labels[i]);
    }
    std::vector<const Matrix *> ptrs;
    for (auto &c : crops) ptrs.push_back(&c.magnitudes);
    Tensor logits = net->Forward(StackBatch(ptrs), Mode::kTrain);
    Tensor grad;
    total += SoftmaxCrossEntropy(logits, ys, &grad) * static_cast<double>(end - start);
  }
  for (size_t i = 0; i < saved.size(); ++i) {
    net->layers()[i].running_mean = saved[i].first;
    net->layers()[i].running_var = saved[i].second;
  }
  return total / static_cast<double>(n);
}

}  // namespace

TrainHistory TrainClassifier(Network *net, const std::vector<Spectrogram> &spectrograms,
                             const std::vector<int> &labels, const TrainHyper &hyper) {
  const int k = net->OutputDim();
  if (k < 2) Fail(ErrorKind::kInvalidInput, "classifier needs at least 2 outputs");
  if (spectrograms.size() != labels.size() || spectrograms.empty())
    Fail(ErrorKind::kInvalidInput, "spectrogram/label count mismatch");
  std::vector<int> seen(static_cast<size_t>(k), 0);
  for (int y : labels) {
    if (y < 0 || y >= k) Fail(ErrorKind::kInvalidInput, "label out of range");
    seen[static_cast<size_t>(y)] = 1;
  }
  for (int c = 0; c < k; ++c)
    if (!seen[static_cast<size_t>(c)])
      Fail(ErrorKind::kInvalidInput, "class " + std::to_string(c) + " absent from training data");
  for (const auto &s : spectrograms)
    if (s.Frames() < kCropFrames) Fail(ErrorKind::kInvalidInput, "training spectrogram shorter than 300 frames");
  if (hyper.batch_size < 2) Fail(ErrorKind::kInvalidInput, "batch size must be at least 2 for batchnorm");

  TrainHistory hist;
  SgdOptimizer opt(hyper.momentum, hyper.weight_decay);
  net->ZeroGrad();
  if (hyper.track_full_loss) hist.full_loss.push_back(FullPassLoss(net, spectrograms, labels, hyper));

  double lr = hyper.lr;
  double best = std::numeric_limits<double>::infinity();
  int since_best = 0;
  std::vector<size_t> order(spectrograms.size());
  std::iota(order.begin(), order.end(), 0);
  const size_t n = order.size();
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    Rng rng(DeriveSeed(hyper.seed, 0x5EED, static_cast<uint64_t>(epoch)));
    rng.Shuffle(order.begin(), order.end());
    double sum = 0.0;
    size_t seen_examples = 0;
    for (size_t start = 0; start < n; start += static_cast<size_t>(hyper.batch_size)) {
      size_t end = std::min(n, start + static_cast<size_t>(hyper.batch_size));
      // A trailing batch of one would give degenerate batch statistics.
      if (end - start < 2) break;
      std::vector<Spectrogram> crops;
      std::vector<int> ys;
      for (size_t i = start; i < end; ++i) {
        const size_t idx = order[i];
        crops.push_back(RandomCrop3s(spectrograms[idx],
                                     DeriveSeed(hyper.seed, static_cast<uint64_t>(epoch) + 1, idx)));
        ys.push_back(labels[idx]);
      }
      std::vector<const Matrix *> ptrs;
      for (auto &c : crops) ptrs.push_back(&c.magnitudes);
      Tensor logits = net->Forward(StackBatch(ptrs), Mode::kTrain);
      Tensor grad;
      const double loss = SoftmaxCrossEntropy(logits, ys, &grad);
      net->Backward(grad);
      opt.Step(net, lr);
      sum += loss * static_cast<double>(end - start);
      seen_examples += end - start;
    }
    const double epoch_loss = sum / static_cast<double>(std::max<size_t>(seen_examples, 1));
    hist.epoch_loss.push_back(epoch_loss);
    hist.lr.push_back(lr);
    if (hyper.track_full_loss) hist.full_loss.push_back(FullPassLoss(net, spectrograms, labels, hyper));
    if (hyper.verbose)
      std::fprintf(stderr, "epoch %d lr %.3g loss %.5f\n", epoch + 1, lr, epoch_loss);
    if (epoch_loss < best * (1.0 - hyper.plateau_tolerance)) {
      best = epoch_loss;
      since_best = 0;
    } else if (++since_best >= hyper.plateau_patience) {
      lr *= hyper.plateau_factor;
      since_best = 0;
    }
  }
  return hist;
}

}  // namespace voxkit::nn
