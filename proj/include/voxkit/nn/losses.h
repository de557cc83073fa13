// include/voxkit/nn/losses.h

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

#ifndef VOXKIT_NN_LOSSES_H_
#define VOXKIT_NN_LOSSES_H_

#include <vector>

#include "voxkit/common.h"
#include "voxkit/nn/tensor.h"

namespace voxkit::nn {

/// Numerically stable softmax of a score vector.
Vector Softmax(const Vector &scores);

/// Mean softmax cross-entropy over the batch.  logits are [N, K, 1, 1].
/// Writes dLoss/dlogits into *grad (same shape).  Labels outside [0, K)
/// throw kInvalidInput.
double SoftmaxCrossEntropy(const Tensor &logits, const std::vector<int> &labels, Tensor *grad);

/// same: dist^2; different: max(0, margin - dist)^2.
double ContrastiveLoss(double dist, bool same, double margin);

/// Mean contrastive loss over pairs of raw embeddings (rows of `a` and
/// `b`), each L2-normalised before the Euclidean distance is taken.
/// Gradients flow back through the normalisation into grad_a / grad_b.
double PairContrastiveLoss(const Matrix &a, const Matrix &b, const std::vector<bool> &same,
                           double margin, Matrix *grad_a, Matrix *grad_b);

/// Rows scaled to unit L2 norm (zero rows stay zero).
Matrix L2NormalizeRows(const Matrix &m);

/// [N, C, 1, 1] tensor <-> N x C matrix.
Matrix TensorToRows(const Tensor &t);
Tensor RowsToTensor(const Matrix &m);

}  // namespace voxkit::nn

#endif  // VOXKIT_NN_LOSSES_H_
