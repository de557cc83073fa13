// include/voxkit/nn/inference.h

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

#ifndef VOXKIT_NN_INFERENCE_H_
#define VOXKIT_NN_INFERENCE_H_

#include "voxkit/audio/features.h"
#include "voxkit/nn/network.h"

namespace voxkit::nn {

/// Whole-utterance forward pass (inference-mode batchnorm, apool6 resized to
/// the realised width) followed by a softmax over the outputs.  Throws
/// kInvalidInput below the network's minimum length.
Vector InferIdentity(Network &net, const Spectrogram &spec);

/// Splits the utterance into non-overlapping 300-frame segments (a trailing
/// partial segment is dropped), classifies each and averages the softmax
/// outputs.  Throws kInvalidInput below 300 frames.
Vector InferSegmentsAvg(Network &net, const Spectrogram &spec);

/// Raw network output for the whole utterance (logits or embedding).
Vector ForwardUtterance(Network &net, const Spectrogram &spec);

/// ReLU'd fc7 activations for the whole utterance.
Vector Fc7Activations(Network &net, const Spectrogram &spec);

/// L2-normalised network output.
Vector Embed(Network &net, const Spectrogram &spec);

double CosineSimilarity(const Vector &a, const Vector &b);

}  // namespace voxkit::nn

#endif  // VOXKIT_NN_INFERENCE_H_
