// include/voxkit/kernels/conv.h

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

#ifndef VOXKIT_KERNELS_CONV_H_
#define VOXKIT_KERNELS_CONV_H_

#include <vector>

#include "voxkit/nn/tensor.h"

// OpenMP kernels for the network layers.  Work is split over samples; any
// reduction across samples (weight gradients, batch statistics) goes through
// per-sample partials summed in sample order, so results do not depend on
// the thread count.

namespace voxkit::kernels {

using nn::Shape;
using nn::Tensor;

struct Window2d {
  int kh = 1, kw = 1;  // support
  int sh = 1, sw = 1;  // stride
  int ph = 0, pw = 0;  // zero padding on each side
};

/// Output extent for a windowed op; floor division, as for every layer here.
Shape WindowOutputShape(const Shape &in, int out_channels, const Window2d &win);

/// out[n] = weight (*) in[n] + bias.  weight is [out_c, in_c, kh, kw], bias
/// [1, out_c, 1, 1].  `out` is resized.
void Conv2dForward(const Tensor &in, const Tensor &weight, const Tensor &bias,
                   const Window2d &win, Tensor *out);

/// Gradients for Conv2dForward.  grad_in may be null (first layer).  The
/// weight and bias gradients are overwritten, not accumulated.
void Conv2dBackward(const Tensor &in, const Tensor &weight, const Tensor &grad_out,
                    const Window2d &win, Tensor *grad_in, Tensor *grad_weight,
                    Tensor *grad_bias);

/// Max pooling; `argmax` receives the flat input offset of each output.
void MaxPoolForward(const Tensor &in, const Window2d &win, Tensor *out,
                    std::vector<size_t> *argmax);
void MaxPoolBackward(const Shape &in_shape, const std::vector<size_t> &argmax,
                     const Tensor &grad_out, Tensor *grad_in);

/// Average pooling over full (unpadded) windows.
void AvgPoolForward(const Tensor &in, const Window2d &win, Tensor *out);
void AvgPoolBackward(const Shape &in_shape, const Window2d &win, const Tensor &grad_out,
                     Tensor *grad_in);

}  // namespace voxkit::kernels

#endif  // VOXKIT_KERNELS_CONV_H_
