// src/kernels/reference.cc

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

#include "voxkit/kernels/reference.h"

#include <cmath>
#include <limits>

namespace voxkit::reference {

void Conv2dForward(const Tensor &in, const Tensor &weight, const Tensor &bias,
                   const Window2d &win, Tensor *out) {
  const Shape &is = in.shape(), &ws = weight.shape();
  const Shape os = kernels::WindowOutputShape(is, ws.n, win);
  *out = Tensor(os);
  for (int n = 0; n < os.n; ++n)
    for (int o = 0; o < os.c; ++o)
      for (int y = 0; y < os.h; ++y)
        for (int x = 0; x < os.w; ++x) {
          double acc = bias.data()[o];
          for (int c = 0; c < is.c; ++c)
            for (int i = 0; i < win.kh; ++i)
              for (int j = 0; j < win.kw; ++j) {
                const int iy = y * win.sh - win.ph + i, ix = x * win.sw - win.pw + j;
                if (iy < 0 || iy >= is.h || ix < 0 || ix >= is.w) continue;
                acc += weight.at(o, c, i, j) * in.at(n, c, iy, ix);
              }
          out->at(n, o, y, x) = acc;
        }
}

void Conv2dBackward(const Tensor &in, const Tensor &weight, const Tensor &grad_out,
                    const Window2d &win, Tensor *grad_in, Tensor *grad_weight,
                    Tensor *grad_bias) {
  const Shape &is = in.shape(), &ws = weight.shape(), &os = grad_out.shape();
  if (grad_in) *grad_in = Tensor(is);
  *grad_weight = Tensor(ws);
  *grad_bias = Tensor(Shape{1, ws.n, 1, 1});
  for (int n = 0; n < os.n; ++n)
    for (int o = 0; o < os.c; ++o)
      for (int y = 0; y < os.h; ++y)
        for (int x = 0; x < os.w; ++x) {
          const double g = grad_out.at(n, o, y, x);
          grad_bias->data()[o] += g;
          for (int c = 0; c < is.c; ++c)
            for (int i = 0; i < win.kh; ++i)
              for (int j = 0; j < win.kw; ++j) {
                const int iy = y * win.sh - win.ph + i, ix = x * win.sw - win.pw + j;
                if (iy < 0 || iy >= is.h || ix < 0 || ix >= is.w) continue;
                grad_weight->at(o, c, i, j) += g * in.at(n, c, iy, ix);
                if (grad_in) grad_in->at(n, c, iy, ix) += g * weight.at(o, c, i, j);
              }
        }
}

void MaxPoolForward(const Tensor &in, const Window2d &win, Tensor *out) {
  const Shape &is = in.shape();
  const Shape os = kernels::WindowOutputShape(is, is.c, win);
  *out = Tensor(os);
  for (int n = 0; n < os.n; ++n)
    for (int c = 0; c < os.c; ++c)
      for (int y = 0; y < os.h; ++y)
        for (int x = 0; x < os.w; ++x) {
          double best = -std::numeric_limits<double>::infinity();
          for (int i = 0; i < win.kh; ++i)
            for (int j = 0; j < win.kw; ++j) {
              const int iy = y * win.sh - win.ph + i, ix = x * win.sw - win.pw + j;
              if (iy < 0 || iy >= is.h || ix < 0 || ix >= is.w) continue;
              best = std::max(best, in.at(n, c, iy, ix));
            }
          out->at(n, c, y, x) = best;
        }
}

void AvgPoolForward(const Tensor &in, const Window2d &win, Tensor *out) {
  const Shape &is = in.shape();
  const Shape os = kernels::WindowOutputShape(is, is.c, win);
  *out = Tensor(os);
  for (int n = 0; n < os.n; ++n)
    for (int c = 0; c < os.c; ++c)
      for (int y = 0; y < os.h; ++y)
        for (int x = 0; x < os.w; ++x) {
          double acc = 0.0;
          for (int i = 0; i < win.kh; ++i)
            for (int j = 0; j < win.kw; ++j) acc += in.at(n, c, y * win.sh + i, x * win.sw + j);
          out->at(n, c, y, x) = acc / (win.kh * win.kw);
        }
}

void BatchNormForwardTrain(const Tensor &in, const Tensor &gamma, const Tensor &beta,
                           double eps, Tensor *out) {
  const Shape &s = in.shape();
  *out = Tensor(s);
  const double count = static_cast<double>(s.n) * s.h * s.w;
  for (int c = 0; c < s.c; ++c) {
    double mean = 0.0;
    for (int n = 0; n < s.n; ++n)
      for (int y = 0; y < s.h; ++y)
        for (int x = 0; x < s.w; ++x) mean += in.at(n, c, y, x);
    mean /= count;
    double var = 0.0;
    for (int n = 0; n < s.n; ++n)
      for (int y = 0; y < s.h; ++y)
        for (int x = 0; x < s.w; ++x) var += (in.at(n, c, y, x) - mean) * (in.at(n, c, y, x) - mean);
    var /= count;
    for (int n = 0; n < s.n; ++n)
      for (int y = 0; y < s.h; ++y)
        for (int x = 0; x < s.w; ++x)
          out->at(n, c, y, x) =
              gamma.data()[c] * (in.at(n, c, y, x) - mean) / std::sqrt(var + eps) + beta.data()[c];
  }
}

}  // namespace voxkit::reference
