// src/kernels/batchnorm.cc

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

#include "voxkit/kernels/batchnorm.h"

#include <cmath>

namespace voxkit::kernels {

namespace {

// Visits channel c of every sample: f(pointer to the plane, plane size).
template <typename F>
void ForChannel(const nn::Shape &s, int c, F &&f) {
  const size_t plane = s.PlaneSize();
  for (int n = 0; n < s.n; ++n) f((static_cast<size_t>(n) * s.c + c) * plane, plane);
}

}  // namespace

void BatchNormForwardTrain(const Tensor &in, const Tensor &gamma, const Tensor &beta,
                           double eps, Tensor *out, BatchNormCache *cache) {
  const nn::Shape &s = in.shape();
  if (!(out->shape() == s)) *out = Tensor(s);
  cache->training = true;
  cache->mean.assign(s.c, 0.0);
  cache->inv_std.assign(s.c, 0.0);
  if (!(cache->x_hat.shape() == s)) cache->x_hat = Tensor(s);
  const double count = static_cast<double>(s.n) * s.PlaneSize();
#pragma omp parallel for schedule(static)
  for (int c = 0; c < s.c; ++c) {
    double sum = 0.0;
    ForChannel(s, c, [&](size_t off, size_t len) {
      for (size_t i = 0; i < len; ++i) sum += in.data()[off + i];
    });
    const double mean = sum / count;
    double sq = 0.0;
    ForChannel(s, c, [&](size_t off, size_t len) {
      for (size_t i = 0; i < len; ++i) {
        const double d = in.data()[off + i] - mean;
        sq += d * d;
      }
    });
    const double inv_std = 1.0 / std::sqrt(sq / count + eps);
    cache->mean[c] = mean;
    cache->inv_std[c] = inv_std;
    const double g = gamma.data()[c], b = beta.data()[c];
    ForChannel(s, c, [&](size_t off, size_t len) {
      for (size_t i = 0; i < len; ++i) {
        const double xh = (in.data()[off + i] - mean) * inv_std;
        cache->x_hat.data()[off + i] = xh;
        out->data()[off + i] = g * xh + b;
      }
    });
  }
}

void BatchNormForwardInference(const Tensor &in, const Tensor &gamma, const Tensor &beta,
                               const std::vector<double> &running_mean,
                               const std::vector<double> &running_var, double eps,
                               Tensor *out, BatchNormCache *cache) {
  const nn::Shape &s = in.shape();
  if (!(out->shape() == s)) *out = Tensor(s);
  cache->training = false;
  cache->mean = running_mean;
  cache->inv_std.assign(s.c, 0.0);
  if (!(cache->x_hat.shape() == s)) cache->x_hat = Tensor(s);
  for (int c = 0; c < s.c; ++c) cache->inv_std[c] = 1.0 / std::sqrt(running_var[c] + eps);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < s.c; ++c) {
    const double g = gamma.data()[c], b = beta.data()[c];
    const double m = running_mean[c], is = cache->inv_std[c];
    ForChannel(s, c, [&](size_t off, size_t len) {
      for (size_t i = 0; i < len; ++i) {
        const double xh = (in.data()[off + i] - m) * is;
        cache->x_hat.data()[off + i] = xh;
        out->data()[off + i] = g * xh + b;
      }
    });
  }
}

void BatchNormBackward(const Tensor &grad_out, const Tensor &gamma, const BatchNormCache &cache,
                       Tensor *grad_in, Tensor *grad_gamma, Tensor *grad_beta) {
  const nn::Shape &s = grad_out.shape();
  const nn::Shape ps{1, s.c, 1, 1};
  if (!(grad_gamma->shape() == ps)) *grad_gamma = Tensor(ps);
  if (!(grad_beta->shape() == ps)) *grad_beta = Tensor(ps);
  if (grad_in && !(grad_in->shape() == s)) *grad_in = Tensor(s);
  const double count = static_cast<double>(s.n) * s.PlaneSize();
  const bool training = cache.training;
#pragma omp parallel for schedule(static)
  for (int c = 0; c < s.c; ++c) {
    double sum_dy = 0.0, sum_dy_xh = 0.0;
    ForChannel(s, c, [&](size_t off, size_t len) {
      for (size_t i = 0; i < len; ++i) {
        const double dy = grad_out.data()[off + i];
        sum_dy += dy;
        sum_dy_xh += dy * cache.x_hat.data()[off + i];
      }
    });
    grad_beta->data()[c] = sum_dy;
    grad_gamma->data()[c] = sum_dy_xh;
    if (!grad_in) continue;
    const double g = gamma.data()[c], is = cache.inv_std[c];
    ForChannel(s, c, [&](size_t off, size_t len) {
      for (size_t i = 0; i < len; ++i) {
        const double dy = grad_out.data()[off + i];
        grad_in->data()[off + i] =
            training ? g * is * (dy - sum_dy / count - cache.x_hat.data()[off + i] * sum_dy_xh / count)
                     : g * is * dy;
      }
    });
  }
}

}  // namespace voxkit::kernels
