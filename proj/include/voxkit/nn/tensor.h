// include/voxkit/nn/tensor.h

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

#ifndef VOXKIT_NN_TENSOR_H_
#define VOXKIT_NN_TENSOR_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace voxkit::nn {

/// NCHW extent.  Every activation and parameter in the network is 4-D;
/// fully connected layers are 1x1 (or 9x1) convolutions.
struct Shape {
  int n = 0, c = 0, h = 0, w = 0;

  size_t Size() const {
    return static_cast<size_t>(n) * c * h * w;
  }
  size_t PlaneSize() const { return static_cast<size_t>(h) * w; }
  bool operator==(const Shape &) const = default;
  std::string ToString() const;
};

/// Dense 4-D tensor with an optional gradient buffer of identical extent.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Shape shape, double fill = 0.0)
      : shape_(shape), values_(shape.Size(), fill) {}

  const Shape &shape() const { return shape_; }
  size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double *data() { return values_.data(); }
  const double *data() const { return values_.data(); }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  double &at(int n, int c, int h, int w) { return values_[Offset(n, c, h, w)]; }
  double at(int n, int c, int h, int w) const { return values_[Offset(n, c, h, w)]; }

  bool has_grad() const { return !grad_.empty(); }
  /// Allocates (zeroed) on first use.
  std::span<double> grad();
  std::span<const double> grad() const { return grad_; }
  void ZeroGrad();
  void DropGrad() { grad_.clear(); grad_.shrink_to_fit(); }

  void Fill(double v);

 private:
  size_t Offset(int n, int c, int h, int w) const {
    return ((static_cast<size_t>(n) * shape_.c + c) * shape_.h + h) * shape_.w + w;
  }

  Shape shape_;
  std::vector<double> values_;
  std::vector<double> grad_;
};

}  // namespace voxkit::nn

#endif  // VOXKIT_NN_TENSOR_H_
