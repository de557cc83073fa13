// bench/bench_kernels.cc

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

// Parallel kernels against their serial references.  Thread count of the
// parallel variants is the benchmark argument.

#include <benchmark/benchmark.h>

#include "voxkit/common.h"
#include "voxkit/gmm/diag_gmm.h"
#include "voxkit/ivector/baum_welch.h"
#include "voxkit/kernels/batchnorm.h"
#include "voxkit/kernels/conv.h"
#include "voxkit/kernels/reference.h"

namespace {

using namespace voxkit;
using nn::Shape;
using nn::Tensor;

Tensor Random(const Shape &s, uint64_t seed) {
  Tensor t(s);
  Rng rng(seed);
  for (double &v : t.values()) v = rng.Normal();
  return t;
}

// conv2 of the downsized network on a 3 s batch of 4
struct ConvCase {
  Tensor in = Random(Shape{4, 16, 126, 73}, 1);
  Tensor w = Random(Shape{32, 16, 5, 5}, 2);
  Tensor b = Random(Shape{1, 32, 1, 1}, 3);
  kernels::Window2d win{5, 5, 2, 2, 1, 1};
};

void BM_ConvForwardReference(benchmark::State &st) {
  ConvCase c;
  Tensor out;
  for (auto _ : st) {
    reference::Conv2dForward(c.in, c.w, c.b, c.win, &out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_ConvForwardParallel(benchmark::State &st) {
  SetNumThreads(static_cast<int>(st.range(0)));
  ConvCase c;
  Tensor out;
  for (auto _ : st) {
    kernels::Conv2dForward(c.in, c.w, c.b, c.win, &out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_ConvBackwardReference(benchmark::State &st) {
  ConvCase c;
  Tensor out, gi, gw, gb;
  kernels::Conv2dForward(c.in, c.w, c.b, c.win, &out);
  const Tensor gy = Random(out.shape(), 4);
  for (auto _ : st) {
    reference::Conv2dBackward(c.in, c.w, gy, c.win, &gi, &gw, &gb);
    benchmark::DoNotOptimize(gw.data());
  }
}

void BM_ConvBackwardParallel(benchmark::State &st) {
  SetNumThreads(static_cast<int>(st.range(0)));
  ConvCase c;
  Tensor out, gi, gw, gb;
  kernels::Conv2dForward(c.in, c.w, c.b, c.win, &out);
  const Tensor gy = Random(out.shape(), 4);
  for (auto _ : st) {
    kernels::Conv2dBackward(c.in, c.w, gy, c.win, &gi, &gw, &gb);
    benchmark::DoNotOptimize(gw.data());
  }
}

void BM_MaxPoolReference(benchmark::State &st) {
  const Tensor in = Random(Shape{4, 32, 62, 36}, 5);
  Tensor out;
  for (auto _ : st) {
    reference::MaxPoolForward(in, {3, 3, 2, 2, 0, 0}, &out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_MaxPoolParallel(benchmark::State &st) {
  SetNumThreads(static_cast<int>(st.range(0)));
  const Tensor in = Random(Shape{4, 32, 62, 36}, 5);
  Tensor out;
  std::vector<size_t> argmax;
  for (auto _ : st) {
    kernels::MaxPoolForward(in, {3, 3, 2, 2, 0, 0}, &out, &argmax);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_BatchNormReference(benchmark::State &st) {
  const Tensor in = Random(Shape{16, 32, 30, 17}, 6);
  const Tensor gamma(Shape{1, 32, 1, 1}, 1.0), beta(Shape{1, 32, 1, 1}, 0.0);
  Tensor out;
  for (auto _ : st) {
    reference::BatchNormForwardTrain(in, gamma, beta, 1e-5, &out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_BatchNormParallel(benchmark::State &st) {
  SetNumThreads(static_cast<int>(st.range(0)));
  const Tensor in = Random(Shape{16, 32, 30, 17}, 6);
  const Tensor gamma(Shape{1, 32, 1, 1}, 1.0), beta(Shape{1, 32, 1, 1}, 0.0);
  Tensor out;
  kernels::BatchNormCache cache;
  for (auto _ : st) {
    kernels::BatchNormForwardTrain(in, gamma, beta, 1e-5, &out, &cache);
    benchmark::DoNotOptimize(out.data());
  }
}

// Baum-Welch statistics over 40 utterances, 64 components; 1 thread is the
// serial baseline.
void BM_BaumWelch(benchmark::State &st) {
  SetNumThreads(static_cast<int>(st.range(0)));
  Rng rng(7);
  gmm::DiagonalGmm ubm;
  ubm.weights = Vector::Constant(64, 1.0 / 64);
  ubm.means = Matrix(64, 13);
  for (Eigen::Index i = 0; i < ubm.means.size(); ++i) ubm.means.data()[i] = rng.Normal();
  ubm.variances = Matrix::Ones(64, 13);
  std::vector<Matrix> utts;
  for (int u = 0; u < 40; ++u) {
    Matrix x(13, 300);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.Normal();
    utts.push_back(x);
  }
  for (auto _ : st) benchmark::DoNotOptimize(ivector::AccumulateStatsBatch(ubm, utts));
}

}  // namespace

BENCHMARK(BM_ConvForwardReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvForwardParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvBackwardReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvBackwardParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaxPoolReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaxPoolParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchNormReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchNormParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BaumWelch)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
