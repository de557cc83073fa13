// src/kernels/conv.cc

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

#include "voxkit/kernels/conv.h"

#include <algorithm>
#include <limits>

#include <Eigen/Dense>

#include "voxkit/common.h"

namespace voxkit::kernels {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowMap = Eigen::Map<RowMat>;
using ConstRowMap = Eigen::Map<const RowMat>;

void Im2Col(const double *img, const Shape &in, const Shape &out, const Window2d &win,
            double *cols) {
  const int ho = out.h, wo = out.w;
  for (int c = 0; c < in.c; ++c) {
    const double *plane = img + static_cast<size_t>(c) * in.h * in.w;
    for (int i = 0; i < win.kh; ++i) {
      for (int j = 0; j < win.kw; ++j) {
        double *row = cols + (static_cast<size_t>(c * win.kh + i) * win.kw + j) * ho * wo;
        for (int oh = 0; oh < ho; ++oh) {
          const int y = oh * win.sh - win.ph + i;
          double *dst = row + static_cast<size_t>(oh) * wo;
          if (y < 0 || y >= in.h) {
            std::fill(dst, dst + wo, 0.0);
            continue;
          }
          const double *src = plane + static_cast<size_t>(y) * in.w;
          for (int ow = 0; ow < wo; ++ow) {
            const int x = ow * win.sw - win.pw + j;
            dst[ow] = (x >= 0 && x < in.w) ? src[x] : 0.0;
          }
        }
      }
    }
  }
}

void Col2Im(const double *cols, const Shape &in, const Shape &out, const Window2d &win,
            double *img) {
  const int ho = out.h, wo = out.w;
  std::fill(img, img + static_cast<size_t>(in.c) * in.h * in.w, 0.0);
  for (int c = 0; c < in.c; ++c) {
    double *plane = img + static_cast<size_t>(c) * in.h * in.w;
    for (int i = 0; i < win.kh; ++i) {
      for (int j = 0; j < win.kw; ++j) {
        const double *row = cols + (static_cast<size_t>(c * win.kh + i) * win.kw + j) * ho * wo;
        for (int oh = 0; oh < ho; ++oh) {
          const int y = oh * win.sh - win.ph + i;
          if (y < 0 || y >= in.h) continue;
          double *dst = plane + static_cast<size_t>(y) * in.w;
          const double *src = row + static_cast<size_t>(oh) * wo;
          for (int ow = 0; ow < wo; ++ow) {
            const int x = ow * win.sw - win.pw + j;
            if (x >= 0 && x < in.w) dst[x] += src[ow];
          }
        }
      }
    }
  }
}

}  // namespace

Shape WindowOutputShape(const Shape &in, int out_channels, const Window2d &win) {
  const int h = (in.h + 2 * win.ph - win.kh) / win.sh + 1;
  const int w = (in.w + 2 * win.pw - win.kw) / win.sw + 1;
  if (in.h + 2 * win.ph < win.kh || in.w + 2 * win.pw < win.kw || h < 1 || w < 1)
    Fail(ErrorKind::kInvalidInput, "input " + in.ToString() + " smaller than window");
  return Shape{in.n, out_channels, h, w};
}

void Conv2dForward(const Tensor &in, const Tensor &weight, const Tensor &bias,
                   const Window2d &win, Tensor *out) {
  const Shape &is = in.shape(), &ws = weight.shape();
  if (ws.c != is.c || ws.h != win.kh || ws.w != win.kw)
    Fail(ErrorKind::kModelMismatch, "conv weight " + ws.ToString() + " vs input " + is.ToString());
  const Shape os = WindowOutputShape(is, ws.n, win);
  if (!(out->shape() == os)) *out = Tensor(os);
  const int k = is.c * win.kh * win.kw;
  const int hw = os.h * os.w;
  ConstRowMap w(weight.data(), ws.n, k);
  Eigen::Map<const Eigen::VectorXd> b(bias.data(), ws.n);
#pragma omp parallel
  {
    std::vector<double> cols(static_cast<size_t>(k) * hw);
#pragma omp for schedule(static)
    for (int n = 0; n < is.n; ++n) {
      Im2Col(in.data() + static_cast<size_t>(n) * is.c * is.h * is.w, is, os, win, cols.data());
      RowMap y(out->data() + static_cast<size_t>(n) * os.c * hw, os.c, hw);
      y.noalias() = w * ConstRowMap(cols.data(), k, hw);
      y.colwise() += b;
    }
  }
}

void Conv2dBackward(const Tensor &in, const Tensor &weight, const Tensor &grad_out,
                    const Window2d &win, Tensor *grad_in, Tensor *grad_weight,
                    Tensor *grad_bias) {
  const Shape &is = in.shape(), &ws = weight.shape(), &os = grad_out.shape();
  const int k = is.c * win.kh * win.kw;
  const int hw = os.h * os.w;
  ConstRowMap w(weight.data(), ws.n, k);
  if (grad_in && !(grad_in->shape() == is)) *grad_in = Tensor(is);
  if (!(grad_weight->shape() == ws)) *grad_weight = Tensor(ws);
  if (!(grad_bias->shape() == Shape{1, ws.n, 1, 1})) *grad_bias = Tensor(Shape{1, ws.n, 1, 1});

  std::vector<RowMat> partial(static_cast<size_t>(is.n));
#pragma omp parallel
  {
    std::vector<double> cols(static_cast<size_t>(k) * hw);
    RowMat dcols;
#pragma omp for schedule(static)
    for (int n = 0; n < is.n; ++n) {
      Im2Col(in.data() + static_cast<size_t>(n) * is.c * is.h * is.w, is, os, win, cols.data());
      ConstRowMap dy(grad_out.data() + static_cast<size_t>(n) * os.c * hw, os.c, hw);
      partial[static_cast<size_t>(n)].noalias() = dy * ConstRowMap(cols.data(), k, hw).transpose();
      if (grad_in) {
        dcols.noalias() = w.transpose() * dy;
        Col2Im(dcols.data(), is, os, win,
               grad_in->data() + static_cast<size_t>(n) * is.c * is.h * is.w);
      }
    }
  }
  RowMap gw(grad_weight->data(), ws.n, k);
  gw.setZero();
  for (const auto &p : partial) gw += p;

  for (int c = 0; c < os.c; ++c) {
    double acc = 0.0;
    for (int n = 0; n < os.n; ++n) {
      const double *p = grad_out.data() + (static_cast<size_t>(n) * os.c + c) * hw;
      for (int i = 0; i < hw; ++i) acc += p[i];
    }
    grad_bias->data()[c] = acc;
  }
}

void MaxPoolForward(const Tensor &in, const Window2d &win, Tensor *out,
                    std::vector<size_t> *argmax) {
  const Shape &is = in.shape();
  const Shape os = WindowOutputShape(is, is.c, win);
  if (!(out->shape() == os)) *out = Tensor(os);
  argmax->assign(os.Size(), 0);
  const int planes = is.n * is.c;
#pragma omp parallel for schedule(static)
  for (int p = 0; p < planes; ++p) {
    const size_t in_base = static_cast<size_t>(p) * is.h * is.w;
    const size_t out_base = static_cast<size_t>(p) * os.h * os.w;
    for (int oh = 0; oh < os.h; ++oh) {
      for (int ow = 0; ow < os.w; ++ow) {
        double best = -std::numeric_limits<double>::infinity();
        size_t best_idx = 0;
        for (int i = 0; i < win.kh; ++i) {
          const int y = oh * win.sh - win.ph + i;
          if (y < 0 || y >= is.h) continue;
          for (int j = 0; j < win.kw; ++j) {
            const int x = ow * win.sw - win.pw + j;
            if (x < 0 || x >= is.w) continue;
            const size_t idx = in_base + static_cast<size_t>(y) * is.w + x;
            if (in.data()[idx] > best) {
              best = in.data()[idx];
              best_idx = idx;
            }
          }
        }
        const size_t o = out_base + static_cast<size_t>(oh) * os.w + ow;
        out->data()[o] = best;
        (*argmax)[o] = best_idx;
      }
    }
  }
}

void MaxPoolBackward(const Shape &in_shape, const std::vector<size_t> &argmax,
                     const Tensor &grad_out, Tensor *grad_in) {
  *grad_in = Tensor(in_shape);
  const Shape &os = grad_out.shape();
  const int planes = os.n * os.c;
  const size_t plane = os.PlaneSize();
  // Each plane scatters only into its own input plane.
#pragma omp parallel for schedule(static)
  for (int p = 0; p < planes; ++p) {
    for (size_t i = 0; i < plane; ++i) {
      const size_t o = static_cast<size_t>(p) * plane + i;
      grad_in->data()[argmax[o]] += grad_out.data()[o];
    }
  }
}

void AvgPoolForward(const Tensor &in, const Window2d &win, Tensor *out) {
  const Shape &is = in.shape();
  const Shape os = WindowOutputShape(is, is.c, win);
  if (!(out->shape() == os)) *out = Tensor(os);
  const double inv = 1.0 / (win.kh * win.kw);
  const int planes = is.n * is.c;
#pragma omp parallel for schedule(static)
  for (int p = 0; p < planes; ++p) {
    const double *src = in.data() + static_cast<size_t>(p) * is.h * is.w;
    double *dst = out->data() + static_cast<size_t>(p) * os.h * os.w;
    for (int oh = 0; oh < os.h; ++oh) {
      for (int ow = 0; ow < os.w; ++ow) {
        double acc = 0.0;
        for (int i = 0; i < win.kh; ++i)
          for (int j = 0; j < win.kw; ++j)
            acc += src[static_cast<size_t>(oh * win.sh + i) * is.w + ow * win.sw + j];
        dst[static_cast<size_t>(oh) * os.w + ow] = acc * inv;
      }
    }
  }
}

void AvgPoolBackward(const Shape &in_shape, const Window2d &win, const Tensor &grad_out,
                     Tensor *grad_in) {
  *grad_in = Tensor(in_shape);
  const Shape &os = grad_out.shape();
  const double inv = 1.0 / (win.kh * win.kw);
  const int planes = os.n * os.c;
#pragma omp parallel for schedule(static)
  for (int p = 0; p < planes; ++p) {
    const double *src = grad_out.data() + static_cast<size_t>(p) * os.h * os.w;
    double *dst = grad_in->data() + static_cast<size_t>(p) * in_shape.h * in_shape.w;
    for (int oh = 0; oh < os.h; ++oh)
      for (int ow = 0; ow < os.w; ++ow)
        for (int i = 0; i < win.kh; ++i)
          for (int j = 0; j < win.kw; ++j)
            dst[static_cast<size_t>(oh * win.sh + i) * in_shape.w + ow * win.sw + j] +=
                src[static_cast<size_t>(oh) * os.w + ow] * inv;
  }
}

}  // namespace voxkit::kernels
