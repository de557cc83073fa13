// include/voxkit/kernels/reference.h

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

#ifndef VOXKIT_KERNELS_REFERENCE_H_
#define VOXKIT_KERNELS_REFERENCE_H_

#include <vector>

#include "voxkit/kernels/batchnorm.h"
#include "voxkit/kernels/conv.h"

// Serial direct-loop versions of the layer kernels.  Slow on purpose: they
// follow the definitions literally and serve as oracles in the tests and as
// the baseline in the benchmark.

namespace voxkit::reference {

using kernels::Window2d;
using nn::Shape;
using nn::Tensor;

void Conv2dForward(const Tensor &in, const Tensor &weight, const Tensor &bias,
                   const Window2d &win, Tensor *out);
void Conv2dBackward(const Tensor &in, const Tensor &weight, const Tensor &grad_out,
                    const Window2d &win, Tensor *grad_in, Tensor *grad_weight,
                    Tensor *grad_bias);

void MaxPoolForward(const Tensor &in, const Window2d &win, Tensor *out);
void AvgPoolForward(const Tensor &in, const Window2d &win, Tensor *out);

void BatchNormForwardTrain(const Tensor &in, const Tensor &gamma, const Tensor &beta,
                           double eps, Tensor *out);

}  // namespace voxkit::reference

#endif  // VOXKIT_KERNELS_REFERENCE_H_
