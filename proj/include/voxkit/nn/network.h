// include/voxkit/nn/network.h

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

#ifndef VOXKIT_NN_NETWORK_H_
#define VOXKIT_NN_NETWORK_H_

#include <cstdint>
#include <string>
#include <vector>

#include "voxkit/kernels/batchnorm.h"
#include "voxkit/kernels/conv.h"
#include "voxkit/nn/tensor.h"

namespace voxkit::nn {

enum class LayerKind : uint32_t {
  kConv = 1,
  kMaxPool = 2,
  kAvgPool = 3,
  kFullyConnected = 4,
  kBatchNorm = 5,
  kRelu = 6,
  kSoftmax = 7,
};

const char *LayerKindName(LayerKind kind);

struct LayerSpec {
  LayerKind kind = LayerKind::kRelu;
  int support_h = 1, support_w = 1;
  int filter_count = 0;  // conv / fully connected outputs
  int stride_h = 1, stride_w = 1;
  int pad_h = 0, pad_w = 0;
  /// Average pool whose width support is the realised input width (apool6).
  bool full_width = false;

  kernels::Window2d Window() const {
    return {support_h, support_w, stride_h, stride_w, pad_h, pad_w};
  }
};

enum class Mode { kTrain, kInference };

struct Layer {
  std::string name;
  LayerSpec spec;
  bool frozen = false;

  // conv / fully connected
  Tensor weight, bias;
  // batchnorm
  Tensor gamma, beta;
  std::vector<double> running_mean, running_var;

  // forward-pass caches
  std::vector<size_t> argmax;
  kernels::BatchNormCache bn_cache;
  int realized_width = 0;

  bool HasParams() const {
    return spec.kind == LayerKind::kConv || spec.kind == LayerKind::kFullyConnected ||
           spec.kind == LayerKind::kBatchNorm;
  }
};

struct ParamRef {
  Tensor *value;
  bool decay;  // weights decay, biases and batchnorm affine terms do not
  const Layer *owner;
};

/// Widths of the convolutional stack.  Defaults are the full-size network;
/// spatial geometry is fixed and identical for every width choice.
struct CnnConfig {
  int conv1 = 96, conv2 = 256, conv3 = 384, conv4 = 256, conv5 = 256;
  int fc6 = 4096, fc7 = 1024;
  int outputs = 1251;
  /// false builds the fixed-length variant whose fc6 spans all 8 time
  /// positions of a 3 s input and has no apool6.
  bool average_pool = true;
  uint64_t seed = 42;
};

/// One row of a shape trace: named layer and its output (C, H, W).
struct ShapeEntry {
  std::string name;
  Shape shape;
};

class Network {
 public:
  static constexpr double kBatchNormEps = 1e-5;
  static constexpr double kBatchNormMomentum = 0.1;

  Network() = default;

  void AddLayer(Layer layer) { layers_.push_back(std::move(layer)); }
  std::vector<Layer> &layers() { return layers_; }
  const std::vector<Layer> &layers() const { return layers_; }
  Layer &layer(const std::string &name);
  const Layer &layer(const std::string &name) const;
  bool HasLayer(const std::string &name) const;

  /// Runs the stack and records what Backward needs.  In kTrain mode
  /// unfrozen batchnorm layers use batch statistics and update their running
  /// averages; frozen ones always behave as in inference.
  Tensor Forward(const Tensor &input, Mode mode);

  /// Output of every layer of the last Forward (same order as layers()).
  const std::vector<Tensor> &activations() const { return acts_; }
  /// Output of the named layer in the last Forward.
  const Tensor &Activation(const std::string &name) const;

  /// Reverse pass from dLoss/dOutput.  Parameter gradients of unfrozen layers
  /// are accumulated into the parameter tensors' grad buffers.  When
  /// `grad_input` is given the gradient w.r.t. the network input is
  /// returned; otherwise propagation stops below the lowest unfrozen layer.
  void Backward(const Tensor &grad_output, Tensor *grad_input = nullptr);

  void ZeroGrad();
  std::vector<ParamRef> Params(bool include_frozen = false);

  /// Shape arithmetic only; throws kInvalidInput when the input is too small.
  std::vector<ShapeEntry> TraceShapes(const Shape &input) const;
  /// Smallest number of input frames (width) for the given height.
  int MinimumFrames(int height) const;
  /// Support n of apool6 realised by the last Forward (0 if absent).
  int ApoolSupport() const;

  int OutputDim() const;
  size_t ParameterCount() const;

 private:
  std::vector<Layer> layers_;
  std::vector<Tensor> acts_;
  Tensor input_;
  bool has_forward_ = false;
};

using NetworkParams = Network;

/// The Table-3 style stack: conv1-5 with pools, fc6 (9x1) and apool6, fc7,
/// fc8; batchnorm + ReLU after every conv and after fc6/fc7.  Weights are He
/// initialised from cfg.seed.
Network BuildCnn(const CnnConfig &cfg);

/// Full-size network with `n_classes` outputs.  Throws kInvalidInput for
/// n_classes < 2.
Network BuildFullCnn(int n_classes, uint64_t seed = 42);

/// Square-kernel convolution, He initialised.
Layer MakeConv(const std::string &name, int in_c, int out_c, int k, int stride, int pad,
               uint64_t seed);
/// Unpadded max or average pool.
Layer MakePool(const std::string &name, LayerKind kind, int kh, int kw, int sh, int sw);
/// gamma 1, beta 0, running mean 0 and variance 1.
Layer MakeBatchNorm(const std::string &name, int channels);
Layer MakeRelu(const std::string &name);

/// Fresh He-initialised fully connected layer with the given input/output
/// widths and spatial support.
Layer MakeFullyConnected(const std::string &name, int in_channels, int outputs, int support_h,
                         int support_w, uint64_t seed);

}  // namespace voxkit::nn

#endif  // VOXKIT_NN_NETWORK_H_
