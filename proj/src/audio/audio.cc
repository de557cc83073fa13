// src/audio/audio.cc

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

#include "voxkit/audio/audio.h"

#include <cmath>
#include <numbers>

#include "voxkit/common.h"

namespace voxkit {

namespace {

// Zero crossings of the sinc kernel on each side of the interpolation point.
constexpr int kSincZeros = 16;

double Sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

}  // namespace

std::vector<double> Resample(const std::vector<double> &x, int from_hz, int to_hz) {
  if (from_hz <= 0 || to_hz <= 0)
    Fail(ErrorKind::kInvalidAudio, "sample rates must be positive");
  if (from_hz == to_hz) return x;
  const double ratio = static_cast<double>(to_hz) / from_hz;
  const auto n_in = static_cast<int64_t>(x.size());
  const auto n_out = static_cast<int64_t>(std::llround(n_in * ratio));
  // Normalised cutoff relative to the input Nyquist rate.
  const double cutoff = std::min(1.0, ratio);
  const double half_width = kSincZeros / cutoff;
  std::vector<double> y(static_cast<size_t>(n_out), 0.0);
#pragma omp parallel for schedule(static)
  for (int64_t i = 0; i < n_out; ++i) {
    const double pos = static_cast<double>(i) / ratio;
    const auto lo = std::max<int64_t>(0, static_cast<int64_t>(std::ceil(pos - half_width)));
    const auto hi = std::min<int64_t>(n_in - 1, static_cast<int64_t>(std::floor(pos + half_width)));
    double acc = 0.0;
    for (int64_t j = lo; j <= hi; ++j) {
      const double t = static_cast<double>(j) - pos;
      const double hann = 0.5 + 0.5 * std::cos(std::numbers::pi * t / half_width);
      acc += x[static_cast<size_t>(j)] * cutoff * Sinc(cutoff * t) * hann;
    }
    y[static_cast<size_t>(i)] = acc;
  }
  return y;
}

AudioBuffer ToMono16k(const std::vector<std::vector<double>> &channels, int rate_hz) {
  if (rate_hz <= 0) Fail(ErrorKind::kInvalidAudio, "sample rate must be positive");
  if (channels.empty()) Fail(ErrorKind::kInvalidAudio, "no channels");
  const size_t n = channels.front().size();
  if (n == 0) Fail(ErrorKind::kInvalidAudio, "no samples");
  for (const auto &ch : channels)
    if (ch.size() != n) Fail(ErrorKind::kInvalidAudio, "channels differ in length");

  std::vector<double> mono(n, 0.0);
  if (channels.size() == 1) {
    mono = channels.front();
  } else {
    const double inv = 1.0 / static_cast<double>(channels.size());
    for (const auto &ch : channels)
      for (size_t i = 0; i < n; ++i) mono[i] += ch[i];
    for (auto &v : mono) v *= inv;
  }
  for (double v : mono)
    if (!std::isfinite(v)) Fail(ErrorKind::kInvalidAudio, "non-finite sample");

  AudioBuffer out;
  out.samples = Resample(mono, rate_hz, kSampleRate);
  out.sample_rate_hz = kSampleRate;
  if (out.samples.empty()) Fail(ErrorKind::kInvalidAudio, "input shorter than one output sample");
  return out;
}

}  // namespace voxkit
