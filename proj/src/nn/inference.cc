// src/nn/inference.cc

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

#include "voxkit/nn/inference.h"

#include "voxkit/nn/losses.h"
#include "voxkit/nn/trainer.h"

namespace voxkit::nn {

namespace {

Tensor SingleInput(const Network &net, const Matrix &m) {
  const int h = static_cast<int>(m.rows()), w = static_cast<int>(m.cols());
  try {
    net.TraceShapes(Shape{1, 1, h, w});
  } catch (const VoxError &e) {
    Fail(ErrorKind::kInvalidInput, "input of " + std::to_string(w) +
                                       " frames is below the network minimum of " +
                                       std::to_string(net.MinimumFrames(h)));
  }
  return StackBatch({&m});
}

Vector OutputVector(const Tensor &t) {
  Vector v(static_cast<Eigen::Index>(t.size()));
  for (size_t i = 0; i < t.size(); ++i) v[static_cast<Eigen::Index>(i)] = t.data()[i];
  return v;
}

}  // namespace

Vector ForwardUtterance(Network &net, const Spectrogram &spec) {
  Tensor out = net.Forward(SingleInput(net, spec.magnitudes), Mode::kInference);
  if (out.shape().h != 1 || out.shape().w != 1)
    Fail(ErrorKind::kInvalidInput, "network output is not 1x1 for this input length");
  return OutputVector(out);
}

Vector InferIdentity(Network &net, const Spectrogram &spec) {
  return Softmax(ForwardUtterance(net, spec));
}

Vector InferSegmentsAvg(Network &net, const Spectrogram &spec) {
  const int64_t t = spec.Frames();
  if (t < kCropFrames) Fail(ErrorKind::kInvalidInput, "segment averaging needs at least 300 frames");
  const int64_t segments = t / kCropFrames;
  Vector acc;
  for (int64_t s = 0; s < segments; ++s) {
    Spectrogram seg;
    seg.magnitudes = spec.magnitudes.middleCols(s * kCropFrames, kCropFrames);
    Vector p = InferIdentity(net, seg);
    if (s == 0) acc = p; else acc += p;
  }
  return acc / static_cast<double>(segments);
}

Vector Fc7Activations(Network &net, const Spectrogram &spec) {
  net.Forward(SingleInput(net, spec.magnitudes), Mode::kInference);
  return OutputVector(net.Activation("relu7"));
}

Vector Embed(Network &net, const Spectrogram &spec) {
  Vector v = ForwardUtterance(net, spec);
  const double n = v.norm();
  return n > 0 ? Vector(v / n) : v;
}

double CosineSimilarity(const Vector &a, const Vector &b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return a.dot(b) / (na * nb);
}

}  // namespace voxkit::nn
