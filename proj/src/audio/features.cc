// src/audio/features.cc

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

#include "voxkit/audio/features.h"

#include <cmath>
#include <complex>
#include <fstream>
#include <mutex>
#include <numbers>
#include <vector>

#include <fftw3.h>

#include "voxkit/binary_io.h"

namespace voxkit {

namespace {

// FFTW planning is not thread-safe; plan once and run with new-array execute.
class RealFft {
 public:
  static const RealFft &Get() {
    static RealFft instance;
    return instance;
  }

  /// `in` and `out` must come from fftw_malloc.
  void Execute(double *in, fftw_complex *out) const { fftw_execute_dft_r2c(plan_, in, out); }

 private:
  RealFft() {
    double *in = fftw_alloc_real(kFftSize);
    fftw_complex *out = fftw_alloc_complex(kFftSize / 2 + 1);
    plan_ = fftw_plan_dft_r2c_1d(kFftSize, in, out, FFTW_ESTIMATE);
    fftw_free(in);
    fftw_free(out);
  }
  fftw_plan plan_;
};

struct FftBuffers {
  FftBuffers()
      : in(fftw_alloc_real(kFftSize)), out(fftw_alloc_complex(kFftSize / 2 + 1)) {}
  ~FftBuffers() {
    fftw_free(in);
    fftw_free(out);
  }
  FftBuffers(const FftBuffers &) = delete;
  FftBuffers &operator=(const FftBuffers &) = delete;
  double *in;
  fftw_complex *out;
};

const std::vector<double> &HammingWindow() {
  static const std::vector<double> window = [] {
    std::vector<double> w(kWindowSamples);
    for (int i = 0; i < kWindowSamples; ++i)
      w[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / (kWindowSamples - 1));
    return w;
  }();
  return window;
}

int64_t Reflect(int64_t idx, int64_t n) {
  while (idx < 0 || idx >= n) {
    if (idx < 0) idx = -idx;
    if (idx >= n) idx = 2 * (n - 1) - idx;
  }
  return idx;
}

// Fills buffers.in with windowed, zero-padded frame t and runs the FFT.
// Returns the energy of the windowed frame.
double AnalyseFrame(const std::vector<double> &x, int64_t t, FftBuffers *fb) {
  const auto n = static_cast<int64_t>(x.size());
  const int64_t start = t * kHopSamples + kHopSamples / 2 - kWindowSamples / 2;
  const auto &w = HammingWindow();
  double energy = 0.0;
  for (int i = 0; i < kWindowSamples; ++i) {
    const double v = x[static_cast<size_t>(Reflect(start + i, n))] * w[i];
    fb->in[i] = v;
    energy += v * v;
  }
  for (int i = kWindowSamples; i < kFftSize; ++i) fb->in[i] = 0.0;
  RealFft::Get().Execute(fb->in, fb->out);
  return energy;
}

void CheckLength(const AudioBuffer &buf) {
  if (buf.samples.size() < static_cast<size_t>(kWindowSamples))
    Fail(ErrorKind::kInvalidAudio, "buffer shorter than one 25 ms window");
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

// [kMelFilters x (kFftSize/2 + 1)] triangular filterbank.
const Matrix &MelFilterbank() {
  static const Matrix bank = [] {
    const int n_bins = kFftSize / 2 + 1;
    Matrix m = Matrix::Zero(kMelFilters, n_bins);
    const double mel_lo = HzToMel(0.0), mel_hi = HzToMel(kSampleRate / 2.0);
    std::vector<double> edges(kMelFilters + 2);
    for (int i = 0; i < kMelFilters + 2; ++i)
      edges[i] = MelToHz(mel_lo + (mel_hi - mel_lo) * i / (kMelFilters + 1));
    for (int f = 0; f < kMelFilters; ++f) {
      const double lo = edges[f], mid = edges[f + 1], hi = edges[f + 2];
      for (int k = 0; k < n_bins; ++k) {
        const double hz = static_cast<double>(k) * kSampleRate / kFftSize;
        if (hz > lo && hz < hi)
          m(f, k) = hz <= mid ? (hz - lo) / (mid - lo) : (hi - hz) / (hi - mid);
      }
    }
    return m;
  }();
  return bank;
}

}  // namespace

int64_t FrameCount(int64_t n_samples) {
  return static_cast<int64_t>(std::llround(static_cast<double>(n_samples) / kHopSamples));
}

Spectrogram ComputeSpectrogram(const AudioBuffer &buf) {
  CheckLength(buf);
  const int64_t frames = FrameCount(static_cast<int64_t>(buf.samples.size()));
  Spectrogram spec;
  spec.magnitudes.resize(kSpectrogramBins, frames);
#pragma omp parallel
  {
    FftBuffers fb;
#pragma omp for schedule(static)
    for (int64_t t = 0; t < frames; ++t) {
      AnalyseFrame(buf.samples, t, &fb);
      for (int k = 0; k < kSpectrogramBins; ++k)
        spec.magnitudes(k, t) = std::hypot(fb.out[k][0], fb.out[k][1]);
    }
  }
  return spec;
}

Matrix StandardizeRows(const Matrix &m) {
  const auto cols = static_cast<double>(m.cols());
  Matrix out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const double mean = m.row(r).sum() / cols;
    const double var = (m.row(r).array() - mean).square().sum() / cols;
    const double inv_std = 1.0 / std::sqrt(std::max(var, kVarianceFloor));
    out.row(r) = (m.row(r).array() - mean) * inv_std;
  }
  return out;
}

Spectrogram NormalizeSpectrogram(const Spectrogram &spec) {
  if (spec.Frames() < 2) Fail(ErrorKind::kInvalidAudio, "normalisation needs at least 2 frames");
  Spectrogram out;
  out.magnitudes = StandardizeRows(spec.magnitudes);
  return out;
}

MfccFrames ComputeMfcc(const AudioBuffer &buf) {
  CheckLength(buf);
  const int64_t frames = FrameCount(static_cast<int64_t>(buf.samples.size()));
  const Matrix &bank = MelFilterbank();
  const int n_bins = kFftSize / 2 + 1;
  MfccFrames out;
  out.coeffs.resize(kMfccDim, frames);
#pragma omp parallel
  {
    FftBuffers fb;
    Vector power(n_bins), log_mel(kMelFilters);
#pragma omp for schedule(static)
    for (int64_t t = 0; t < frames; ++t) {
      const double energy = AnalyseFrame(buf.samples, t, &fb);
      for (int k = 0; k < n_bins; ++k)
        power[k] = fb.out[k][0] * fb.out[k][0] + fb.out[k][1] * fb.out[k][1];
      log_mel = (bank * power).array().max(kLogFloor).log();
      out.coeffs(0, t) = std::log(std::max(energy, kLogFloor));
      const double scale = std::sqrt(2.0 / kMelFilters);
      for (int j = 1; j < kMfccDim; ++j) {
        double acc = 0.0;
        for (int m = 0; m < kMelFilters; ++m)
          acc += log_mel[m] * std::cos(std::numbers::pi * j * (m + 0.5) / kMelFilters);
        out.coeffs(j, t) = scale * acc;
      }
    }
  }
  return out;
}

MfccFrames Cmvn(const MfccFrames &frames) {
  if (frames.Frames() < 2) Fail(ErrorKind::kInvalidAudio, "CMVN needs at least 2 frames");
  MfccFrames out;
  out.coeffs = StandardizeRows(frames.coeffs);
  return out;
}

Spectrogram RandomCrop3s(const Spectrogram &spec, uint64_t seed) {
  const int64_t t = spec.Frames();
  if (t < kCropFrames) Fail(ErrorKind::kInvalidAudio, "spectrogram shorter than 300 frames");
  Rng rng(seed);
  const int64_t offset = rng.IntInRange(0, t - kCropFrames);
  Spectrogram out;
  out.magnitudes = spec.magnitudes.middleCols(offset, kCropFrames);
  return out;
}

void WriteFeatureFile(const std::string &path, const Matrix &m) {
  std::ofstream os(path, std::ios::binary);
  if (!os) Fail(ErrorKind::kIo, "cannot write " + path);
  io::WriteMagic(os, "VXF1");
  io::WriteU32(os, static_cast<uint32_t>(m.rows()));
  io::WriteU32(os, static_cast<uint32_t>(m.cols()));
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = m;
  io::WriteF32s(os, rm.data(), static_cast<size_t>(rm.size()));
  if (!os) Fail(ErrorKind::kIo, "write failed for " + path);
}

Matrix ReadFeatureFile(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) Fail(ErrorKind::kIo, "cannot open " + path);
  io::ExpectMagic(is, "VXF1");
  const uint32_t rows = io::ReadU32(is), cols = io::ReadU32(is);
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm(rows, cols);
  io::ReadF32s(is, rm.data(), static_cast<size_t>(rm.size()));
  return rm;
}

}  // namespace voxkit
