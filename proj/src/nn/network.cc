// src/nn/network.cc

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

#include "voxkit/nn/network.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "voxkit/common.h"

namespace voxkit::nn {

const char *LayerKindName(LayerKind kind) {
  switch (kind) {
    case LayerKind::kConv: return "conv";
    case LayerKind::kMaxPool: return "maxpool";
    case LayerKind::kAvgPool: return "avgpool";
    case LayerKind::kFullyConnected: return "fullyconnected";
    case LayerKind::kBatchNorm: return "batchnorm";
    case LayerKind::kRelu: return "relu";
    case LayerKind::kSoftmax: return "softmax";
  }
  return "unknown";
}

namespace {

void AddInto(const Tensor &src, Tensor *dst) {
  auto g = dst->grad();
  const double *s = src.data();
  for (size_t i = 0; i < g.size(); ++i) g[i] += s[i];
}

void SoftmaxChannels(const Tensor &in, Tensor *out) {
  const Shape &s = in.shape();
  if (!(out->shape() == s)) *out = Tensor(s);
  const size_t plane = s.PlaneSize();
  for (int n = 0; n < s.n; ++n) {
    for (size_t p = 0; p < plane; ++p) {
      auto idx = [&](int c) { return (static_cast<size_t>(n) * s.c + c) * plane + p; };
      double mx = -std::numeric_limits<double>::infinity();
      for (int c = 0; c < s.c; ++c) mx = std::max(mx, in.data()[idx(c)]);
      double z = 0.0;
      for (int c = 0; c < s.c; ++c) z += std::exp(in.data()[idx(c)] - mx);
      for (int c = 0; c < s.c; ++c) out->data()[idx(c)] = std::exp(in.data()[idx(c)] - mx) / z;
    }
  }
}

}  // namespace

Layer MakeConv(const std::string &name, int in_c, int out_c, int k, int stride, int pad,
               uint64_t seed) {
  Layer l;
  l.name = name;
  l.spec.kind = LayerKind::kConv;
  l.spec.support_h = l.spec.support_w = k;
  l.spec.stride_h = l.spec.stride_w = stride;
  l.spec.pad_h = l.spec.pad_w = pad;
  l.spec.filter_count = out_c;
  l.weight = Tensor(Shape{out_c, in_c, k, k});
  l.bias = Tensor(Shape{1, out_c, 1, 1});
  Rng rng(seed);
  const double sd = std::sqrt(2.0 / (in_c * k * k));
  for (double &v : l.weight.values()) v = rng.Normal() * sd;
  return l;
}

Layer MakePool(const std::string &name, LayerKind kind, int kh, int kw, int sh, int sw) {
  Layer l;
  l.name = name;
  l.spec.kind = kind;
  l.spec.support_h = kh;
  l.spec.support_w = kw;
  l.spec.stride_h = sh;
  l.spec.stride_w = sw;
  return l;
}

Layer MakeBatchNorm(const std::string &name, int channels) {
  Layer l;
  l.name = name;
  l.spec.kind = LayerKind::kBatchNorm;
  l.spec.filter_count = channels;
  l.gamma = Tensor(Shape{1, channels, 1, 1}, 1.0);
  l.beta = Tensor(Shape{1, channels, 1, 1}, 0.0);
  l.running_mean.assign(channels, 0.0);
  l.running_var.assign(channels, 1.0);
  return l;
}

Layer MakeRelu(const std::string &name) {
  Layer l;
  l.name = name;
  l.spec.kind = LayerKind::kRelu;
  return l;
}


Layer MakeFullyConnected(const std::string &name, int in_channels, int outputs, int support_h,
                         int support_w, uint64_t seed) {
  Layer l;
  l.name = name;
  l.spec.kind = LayerKind::kFullyConnected;
  l.spec.support_h = support_h;
  l.spec.support_w = support_w;
  l.spec.filter_count = outputs;
  l.weight = Tensor(Shape{outputs, in_channels, support_h, support_w});
  l.bias = Tensor(Shape{1, outputs, 1, 1});
  Rng rng(seed);
  const double sd = std::sqrt(2.0 / (in_channels * support_h * support_w));
  for (double &v : l.weight.values()) v = rng.Normal() * sd;
  return l;
}

Layer &Network::layer(const std::string &name) {
  for (auto &l : layers_)
    if (l.name == name) return l;
  Fail(ErrorKind::kInvalidInput, "no layer named " + name);
}

const Layer &Network::layer(const std::string &name) const {
  for (const auto &l : layers_)
    if (l.name == name) return l;
  Fail(ErrorKind::kInvalidInput, "no layer named " + name);
}

bool Network::HasLayer(const std::string &name) const {
  return std::any_of(layers_.begin(), layers_.end(),
                     [&](const Layer &l) { return l.name == name; });
}

Tensor Network::Forward(const Tensor &input, Mode mode) {
  input_ = input;
  acts_.resize(layers_.size());
  for (size_t i = 0; i < layers_.size(); ++i) {
    Layer &l = layers_[i];
    const Tensor &in = i == 0 ? input_ : acts_[i - 1];
    Tensor &out = acts_[i];
    switch (l.spec.kind) {
      case LayerKind::kConv:
      case LayerKind::kFullyConnected:
        kernels::Conv2dForward(in, l.weight, l.bias, l.spec.Window(), &out);
        break;
      case LayerKind::kMaxPool:
        kernels::MaxPoolForward(in, l.spec.Window(), &out, &l.argmax);
        break;
      case LayerKind::kAvgPool: {
        kernels::Window2d win = l.spec.Window();
        if (l.spec.full_width) {
          win.kw = in.shape().w;
          l.realized_width = in.shape().w;
        }
        kernels::AvgPoolForward(in, win, &out);
        break;
      }
      case LayerKind::kBatchNorm:
        if (mode == Mode::kTrain && !l.frozen) {
          kernels::BatchNormForwardTrain(in, l.gamma, l.beta, kBatchNormEps, &out, &l.bn_cache);
          const double count = static_cast<double>(in.shape().n) * in.shape().PlaneSize();
          for (int c = 0; c < in.shape().c; ++c) {
            const double var = 1.0 / (l.bn_cache.inv_std[c] * l.bn_cache.inv_std[c]) - kBatchNormEps;
            const double unbiased = count > 1 ? var * count / (count - 1) : var;
            l.running_mean[c] += kBatchNormMomentum * (l.bn_cache.mean[c] - l.running_mean[c]);
            l.running_var[c] += kBatchNormMomentum * (unbiased - l.running_var[c]);
          }
        } else {
          kernels::BatchNormForwardInference(in, l.gamma, l.beta, l.running_mean, l.running_var,
                                             kBatchNormEps, &out, &l.bn_cache);
        }
        break;
      case LayerKind::kRelu: {
        if (!(out.shape() == in.shape())) out = Tensor(in.shape());
        const double *src = in.data();
        double *dst = out.data();
        const size_t n = in.size();
#pragma omp parallel for schedule(static)
        for (size_t k = 0; k < n; ++k) dst[k] = src[k] > 0.0 ? src[k] : 0.0;
        break;
      }
      case LayerKind::kSoftmax:
        SoftmaxChannels(in, &out);
        break;
    }
  }
  has_forward_ = true;
  return acts_.empty() ? input_ : acts_.back();
}

const Tensor &Network::Activation(const std::string &name) const {
  if (!has_forward_) Fail(ErrorKind::kInvalidState, "no recorded forward pass");
  for (size_t i = 0; i < layers_.size(); ++i)
    if (layers_[i].name == name) return acts_[i];
  Fail(ErrorKind::kInvalidInput, "no layer named " + name);
}

void Network::Backward(const Tensor &grad_output, Tensor *grad_input) {
  if (!has_forward_) Fail(ErrorKind::kInvalidState, "Backward called without a recorded forward pass");
  if (layers_.empty()) {
    if (grad_input) *grad_input = grad_output;
    return;
  }
  if (!(grad_output.shape() == acts_.back().shape()))
    Fail(ErrorKind::kInvalidInput, "gradient shape " + grad_output.shape().ToString() +
                                       " does not match output " + acts_.back().shape().ToString());
  // Lowest layer that needs a parameter gradient.
  size_t lowest = layers_.size();
  for (size_t i = 0; i < layers_.size(); ++i) {
    if (layers_[i].HasParams() && !layers_[i].frozen) {
      lowest = i;
      break;
    }
  }
  if (grad_input) lowest = 0;
  if (lowest == layers_.size()) return;

  Tensor grad = grad_output;
  Tensor next;
  for (size_t ii = layers_.size(); ii-- > lowest;) {
    Layer &l = layers_[ii];
    const Tensor &in = ii == 0 ? input_ : acts_[ii - 1];
    const Tensor &out = acts_[ii];
    const bool need_dx = ii > lowest || grad_input != nullptr;
    switch (l.spec.kind) {
      case LayerKind::kConv:
      case LayerKind::kFullyConnected: {
        Tensor gw, gb;
        kernels::Conv2dBackward(in, l.weight, grad, l.spec.Window(), need_dx ? &next : nullptr, &gw,
                                &gb);
        if (!l.frozen) {
          AddInto(gw, &l.weight);
          AddInto(gb, &l.bias);
        }
        break;
      }
      case LayerKind::kMaxPool:
        kernels::MaxPoolBackward(in.shape(), l.argmax, grad, &next);
        break;
      case LayerKind::kAvgPool: {
        kernels::Window2d win = l.spec.Window();
        if (l.spec.full_width) win.kw = l.realized_width;
        kernels::AvgPoolBackward(in.shape(), win, grad, &next);
        break;
      }
      case LayerKind::kBatchNorm: {
        Tensor gg, gbeta;
        kernels::BatchNormBackward(grad, l.gamma, l.bn_cache, need_dx ? &next : nullptr, &gg, &gbeta);
        if (!l.frozen) {
          AddInto(gg, &l.gamma);
          AddInto(gbeta, &l.beta);
        }
        break;
      }
      case LayerKind::kRelu: {
        next = Tensor(in.shape());
        const size_t n = in.size();
        for (size_t k = 0; k < n; ++k) next.data()[k] = out.data()[k] > 0.0 ? grad.data()[k] : 0.0;
        break;
      }
      case LayerKind::kSoftmax: {
        const Shape &s = out.shape();
        next = Tensor(s);
        const size_t plane = s.PlaneSize();
        for (int n = 0; n < s.n; ++n)
          for (size_t p = 0; p < plane; ++p) {
            auto idx = [&](int c) { return (static_cast<size_t>(n) * s.c + c) * plane + p; };
            double dot = 0.0;
            for (int c = 0; c < s.c; ++c) dot += out.data()[idx(c)] * grad.data()[idx(c)];
            for (int c = 0; c < s.c; ++c)
              next.data()[idx(c)] = out.data()[idx(c)] * (grad.data()[idx(c)] - dot);
          }
        break;
      }
    }
    if (!need_dx) break;
    std::swap(grad, next);
  }
  if (grad_input) *grad_input = std::move(grad);
}

void Network::ZeroGrad() {
  for (auto &p : Params(true)) p.value->ZeroGrad();
}

std::vector<ParamRef> Network::Params(bool include_frozen) {
  std::vector<ParamRef> out;
  for (auto &l : layers_) {
    if (l.frozen && !include_frozen) continue;
    if (l.spec.kind == LayerKind::kConv || l.spec.kind == LayerKind::kFullyConnected) {
      out.push_back({&l.weight, true, &l});
      out.push_back({&l.bias, false, &l});
    } else if (l.spec.kind == LayerKind::kBatchNorm) {
      out.push_back({&l.gamma, false, &l});
      out.push_back({&l.beta, false, &l});
    }
  }
  return out;
}

std::vector<ShapeEntry> Network::TraceShapes(const Shape &input) const {
  std::vector<ShapeEntry> trace;
  Shape s = input;
  for (const Layer &l : layers_) {
    switch (l.spec.kind) {
      case LayerKind::kConv:
      case LayerKind::kFullyConnected:
        if (l.weight.shape().c != s.c)
          Fail(ErrorKind::kModelMismatch, l.name + " expects " + std::to_string(l.weight.shape().c) +
                                              " channels, got " + std::to_string(s.c));
        s = kernels::WindowOutputShape(s, l.spec.filter_count, l.spec.Window());
        break;
      case LayerKind::kMaxPool:
        s = kernels::WindowOutputShape(s, s.c, l.spec.Window());
        break;
      case LayerKind::kAvgPool: {
        kernels::Window2d win = l.spec.Window();
        if (l.spec.full_width) win.kw = s.w;
        s = kernels::WindowOutputShape(s, s.c, win);
        break;
      }
      default:
        continue;
    }
    trace.push_back({l.name, s});
  }
  return trace;
}

int Network::MinimumFrames(int height) const {
  for (int t = 1; t < 100000; ++t) {
    try {
      TraceShapes(Shape{1, 1, height, t});
      return t;
    } catch (const VoxError &) {
    }
  }
  Fail(ErrorKind::kInvalidState, "no input width satisfies the network geometry");
}

int Network::ApoolSupport() const {
  for (const auto &l : layers_)
    if (l.spec.kind == LayerKind::kAvgPool && l.spec.full_width) return l.realized_width;
  return 0;
}

int Network::OutputDim() const {
  for (auto it = layers_.rbegin(); it != layers_.rend(); ++it)
    if (it->spec.kind == LayerKind::kConv || it->spec.kind == LayerKind::kFullyConnected)
      return it->spec.filter_count;
  return 0;
}

size_t Network::ParameterCount() const {
  size_t n = 0;
  for (const auto &l : layers_) n += l.weight.size() + l.bias.size() + l.gamma.size() + l.beta.size();
  return n;
}

Network BuildCnn(const CnnConfig &cfg) {
  Network net;
  uint64_t id = 0;
  auto seed = [&] { return DeriveSeed(cfg.seed, ++id); };
  auto conv_block = [&](const std::string &suffix, int in_c, int out_c, int k, int stride) {
    net.AddLayer(MakeConv("conv" + suffix, in_c, out_c, k, stride, 1, seed()));
    net.AddLayer(MakeBatchNorm("bn" + suffix, out_c));
    net.AddLayer(MakeRelu("relu" + suffix));
  };
  conv_block("1", 1, cfg.conv1, 7, 2);
  net.AddLayer(MakePool("mpool1", LayerKind::kMaxPool, 3, 3, 2, 2));
  conv_block("2", cfg.conv1, cfg.conv2, 5, 2);
  net.AddLayer(MakePool("mpool2", LayerKind::kMaxPool, 3, 3, 2, 2));
  conv_block("3", cfg.conv2, cfg.conv3, 3, 1);
  conv_block("4", cfg.conv3, cfg.conv4, 3, 1);
  conv_block("5", cfg.conv4, cfg.conv5, 3, 1);
  net.AddLayer(MakePool("mpool5", LayerKind::kMaxPool, 5, 3, 3, 2));
  if (cfg.average_pool) {
    net.AddLayer(MakeFullyConnected("fc6", cfg.conv5, cfg.fc6, 9, 1, seed()));
    net.AddLayer(MakeBatchNorm("bn6", cfg.fc6));
    net.AddLayer(MakeRelu("relu6"));
    Layer apool = MakePool("apool6", LayerKind::kAvgPool, 1, 1, 1, 1);
    apool.spec.full_width = true;
    net.AddLayer(std::move(apool));
  } else {
    net.AddLayer(MakeFullyConnected("fc6", cfg.conv5, cfg.fc6, 9, 8, seed()));
    net.AddLayer(MakeBatchNorm("bn6", cfg.fc6));
    net.AddLayer(MakeRelu("relu6"));
  }
  net.AddLayer(MakeFullyConnected("fc7", cfg.fc6, cfg.fc7, 1, 1, seed()));
  net.AddLayer(MakeBatchNorm("bn7", cfg.fc7));
  net.AddLayer(MakeRelu("relu7"));
  net.AddLayer(MakeFullyConnected("fc8", cfg.fc7, cfg.outputs, 1, 1, seed()));
  return net;
}

Network BuildFullCnn(int n_classes, uint64_t seed) {
  if (n_classes < 2) Fail(ErrorKind::kInvalidInput, "a classifier needs at least 2 classes");
  CnnConfig cfg;
  cfg.outputs = n_classes;
  cfg.seed = seed;
  return BuildCnn(cfg);
}

}  // namespace voxkit::nn
