// include/voxkit/kernels/batchnorm.h

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

#ifndef VOXKIT_KERNELS_BATCHNORM_H_
#define VOXKIT_KERNELS_BATCHNORM_H_

#include <vector>

#include "voxkit/nn/tensor.h"

namespace voxkit::kernels {

using nn::Tensor;

/// What BatchNormBackward needs from the forward pass.
struct BatchNormCache {
  bool training = false;
  std::vector<double> mean;     // per channel, batch statistics (training)
  std::vector<double> inv_std;  // per channel, batch or running
  Tensor x_hat;                 // normalised input
};

/// Per-channel normalisation with statistics over (N, H, W).  gamma and beta
/// are [1, C, 1, 1].  Batch variance is the population variance.
void BatchNormForwardTrain(const Tensor &in, const Tensor &gamma, const Tensor &beta,
                           double eps, Tensor *out, BatchNormCache *cache);

void BatchNormForwardInference(const Tensor &in, const Tensor &gamma, const Tensor &beta,
                               const std::vector<double> &running_mean,
                               const std::vector<double> &running_var, double eps,
                               Tensor *out, BatchNormCache *cache);

/// Gradients are overwritten.  grad_in may be null.
void BatchNormBackward(const Tensor &grad_out, const Tensor &gamma, const BatchNormCache &cache,
                       Tensor *grad_in, Tensor *grad_gamma, Tensor *grad_beta);

}  // namespace voxkit::kernels

#endif  // VOXKIT_KERNELS_BATCHNORM_H_
