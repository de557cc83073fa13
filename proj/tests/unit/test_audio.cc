// tests/unit/test_audio.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <numbers>

#include "voxkit/audio/audio.h"
#include "voxkit/audio/features.h"
#include "voxkit/audio/wav.h"

using namespace voxkit;

namespace {

std::vector<double> Sine(double freq, int rate, int n, double amp = 0.5) {
  std::vector<double> x(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] = amp * std::sin(2.0 * std::numbers::pi * freq * i / rate);
  return x;
}

AudioBuffer Noise(int n, uint64_t seed, double sd = 0.1) {
  Rng rng(seed);
  AudioBuffer b;
  b.samples.resize(static_cast<size_t>(n));
  for (auto &v : b.samples) v = sd * rng.Normal();
  return b;
}

template <typename F>
void CheckThrowsKind(F &&fn, ErrorKind kind) {
  bool thrown = false;
  try {
    fn();
  } catch (const VoxError &e) {
    thrown = true;
    CHECK(e.kind() == kind);
  }
  CHECK(thrown);
}

void CheckRowStats(const Matrix &m) {
  const double t = static_cast<double>(m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const double mean = m.row(r).sum() / t;
    const double var = (m.row(r).array() - mean).square().sum() / t;
    CHECK(std::abs(mean) < 1e-9);
    CHECK(std::abs(var - 1.0) < 1e-6);
  }
}

}  // namespace

TEST_CASE("mono 16k passthrough and channel averaging") {
  const auto x = Sine(300.0, 16000, 1000);
  const AudioBuffer a = ToMono16k({x}, 16000);
  CHECK(a.sample_rate_hz == 16000);
  CHECK(a.samples == x);
  const AudioBuffer b = ToMono16k({x, x}, 16000);
  CHECK(b.samples == x);
  CheckThrowsKind([] { ToMono16k({}, 16000); }, ErrorKind::kInvalidAudio);
  CheckThrowsKind([] { ToMono16k({{}}, 16000); }, ErrorKind::kInvalidAudio);
  CheckThrowsKind([&] { ToMono16k({x, std::vector<double>(5, 0.0)}, 16000); }, ErrorKind::kInvalidAudio);
  CheckThrowsKind([] { ToMono16k({{0.1, NAN}}, 16000); }, ErrorKind::kInvalidAudio);
}

TEST_CASE("resampled 8 kHz sine keeps its frequency") {
  const AudioBuffer a = ToMono16k({Sine(440.0, 8000, 8000)}, 8000);
  REQUIRE(std::abs(static_cast<double>(a.samples.size()) - 16000.0) <= 2.0);
  const int n = static_cast<int>(a.samples.size());
  // direct DFT magnitude over 0..1000 Hz in 1 Hz bins
  int best = -1;
  double best_mag = -1.0;
  for (int k = 0; k <= 1000; ++k) {
    std::complex<double> acc = 0.0;
    for (int i = 0; i < n; ++i) acc += a.samples[static_cast<size_t>(i)] * std::polar(1.0, -2.0 * std::numbers::pi * k * i / n);
    if (std::abs(acc) > best_mag) {
      best_mag = std::abs(acc);
      best = k;
    }
  }
  const double bin_hz = 16000.0 / n;
  CHECK(std::abs(best * bin_hz - 440.0) <= bin_hz);
}

TEST_CASE("resampling preserves duration") {
  for (int rate : {8000, 22050, 44100, 48000}) {
    const AudioBuffer a = ToMono16k({std::vector<double>(static_cast<size_t>(rate) * 2 + 7, 0.1)}, rate);
    const double want = (2.0 * rate + 7.0) / rate;
    CHECK(std::abs(a.DurationSeconds() - want) <= 1.0 / 16000.0);
  }
}

TEST_CASE("spectrogram geometry") {
  AudioBuffer b;
  b.samples.assign(48000, 0.0);
  const Spectrogram s = ComputeSpectrogram(b);
  CHECK(s.magnitudes.rows() == 512);
  CHECK(s.Frames() == 300);
  CHECK(s.magnitudes.cwiseAbs().maxCoeff() == 0.0);
  for (int n : {400, 401, 12345, 16000 * 4 + 80}) {
    b.samples.assign(static_cast<size_t>(n), 0.1);
    CHECK(ComputeSpectrogram(b).Frames() == std::lround(n / 160.0));
  }
  b.samples.assign(399, 0.1);
  CheckThrowsKind([&] { ComputeSpectrogram(b); }, ErrorKind::kInvalidAudio);
}

TEST_CASE("sine lands in its analytic bin") {
  for (int bin : {16, 57, 200, 480}) {
    const double f = bin * 16000.0 / kFftSize;
    AudioBuffer b;
    b.samples = Sine(f, 16000, 16000);
    const Spectrogram s = ComputeSpectrogram(b);
    // frames whose window lies inside the signal
    for (int64_t t = 2; t + 2 < s.Frames(); t += 17) {
      Eigen::Index arg;
      s.magnitudes.col(t).maxCoeff(&arg);
      INFO("frame " << t);
      CHECK(arg == std::lround(f * kFftSize / 16000.0));
    }
  }
}

TEST_CASE("spectrogram energy scales quadratically") {
  AudioBuffer a = Noise(8000, 3);
  AudioBuffer b = a;
  for (auto &v : b.samples) v *= 3.0;
  const double ea = ComputeSpectrogram(a).magnitudes.squaredNorm();
  const double eb = ComputeSpectrogram(b).magnitudes.squaredNorm();
  CHECK(eb / ea == doctest::Approx(9.0).epsilon(1e-10));
}

TEST_CASE("spectrogram normalisation") {
  const Spectrogram s = ComputeSpectrogram(Noise(16000, 4));
  const Spectrogram n = NormalizeSpectrogram(s);
  CheckRowStats(n.magnitudes);
  const Spectrogram twice = NormalizeSpectrogram(n);
  CHECK((twice.magnitudes - n.magnitudes).cwiseAbs().maxCoeff() < 1e-6);
  Spectrogram flat;
  flat.magnitudes = Matrix::Constant(512, 10, 3.0);
  CHECK(NormalizeSpectrogram(flat).magnitudes.cwiseAbs().maxCoeff() == 0.0);
  Spectrogram one;
  one.magnitudes = Matrix::Ones(512, 1);
  CheckThrowsKind([&] { NormalizeSpectrogram(one); }, ErrorKind::kInvalidAudio);
}

TEST_CASE("mfcc geometry and scale behaviour") {
  AudioBuffer b = Noise(48000, 5);
  const MfccFrames m = ComputeMfcc(b);
  CHECK(m.coeffs.rows() == 13);
  CHECK(m.Frames() == 300);
  CHECK(m.coeffs.allFinite());
  AudioBuffer b2 = b;
  for (auto &v : b2.samples) v *= 2.0;
  const MfccFrames m2 = ComputeMfcc(b2);
  const Matrix diff = m2.coeffs - m.coeffs;
  CHECK(diff.bottomRows(12).cwiseAbs().maxCoeff() < 1e-6);
  CHECK((diff.row(0).array() - diff(0, 0)).abs().maxCoeff() < 1e-6);
  CHECK(diff(0, 0) > 0.0);

  AudioBuffer z;
  z.samples.assign(16000, 0.0);
  const MfccFrames mz = ComputeMfcc(z);
  for (int64_t t = 1; t < mz.Frames(); ++t) CHECK(mz.coeffs.col(t) == mz.coeffs.col(0));
  z.samples.resize(100);
  CheckThrowsKind([&] { ComputeMfcc(z); }, ErrorKind::kInvalidAudio);
}

TEST_CASE("cmvn") {
  const MfccFrames m = ComputeMfcc(Noise(16000, 6));
  const MfccFrames n = Cmvn(m);
  CheckRowStats(n.coeffs);
  CHECK((Cmvn(n).coeffs - n.coeffs).cwiseAbs().maxCoeff() < 1e-6);
  MfccFrames flat;
  flat.coeffs = Matrix::Constant(13, 5, -2.0);
  CHECK(Cmvn(flat).coeffs.cwiseAbs().maxCoeff() == 0.0);
  MfccFrames one;
  one.coeffs = Matrix::Ones(13, 1);
  CheckThrowsKind([&] { Cmvn(one); }, ErrorKind::kInvalidAudio);
}

TEST_CASE("random crop") {
  Spectrogram s;
  s.magnitudes = Matrix::Random(512, 300);
  CHECK(RandomCrop3s(s, 1).magnitudes == s.magnitudes);
  Spectrogram long_spec;
  long_spec.magnitudes = Matrix::Zero(512, 600);
  for (int t = 0; t < 600; ++t) long_spec.magnitudes(0, t) = t;
  CHECK(RandomCrop3s(long_spec, 9).magnitudes == RandomCrop3s(long_spec, 9).magnitudes);
  std::vector<int> counts(301, 0);
  for (uint64_t seed = 0; seed < 10000; ++seed) {
    const Spectrogram c = RandomCrop3s(long_spec, seed);
    REQUIRE(c.Frames() == 300);
    const int off = static_cast<int>(c.magnitudes(0, 0));
    REQUIRE(off >= 0);
    REQUIRE(off <= 300);
    CHECK(c.magnitudes(0, 299) == off + 299);
    ++counts[static_cast<size_t>(off)];
  }
  const double expect = 10000.0 / 301.0;
  double chi2 = 0.0;
  for (int c : counts) {
    CHECK(c > 0);
    chi2 += (c - expect) * (c - expect) / expect;
  }
  // Wilson-Hilferty 0.999 quantile for 300 degrees of freedom
  const double df = 300.0, z = 3.0902;
  const double crit = df * std::pow(1.0 - 2.0 / (9.0 * df) + z * std::sqrt(2.0 / (9.0 * df)), 3.0);
  CHECK(chi2 < crit);
  Spectrogram short_spec;
  short_spec.magnitudes = Matrix::Zero(512, 299);
  CheckThrowsKind([&] { RandomCrop3s(short_spec, 1); }, ErrorKind::kInvalidAudio);
}

TEST_CASE("wav and feature file round trips") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "voxkit_test_audio";
  fs::create_directories(dir);
  AudioBuffer b;
  b.samples = {0.0, 0.5, -0.5, 0.25, -1.0};
  WriteWav16((dir / "a.wav").string(), b);
  const WavData w = ReadWav((dir / "a.wav").string());
  CHECK(w.sample_rate_hz == 16000);
  REQUIRE(w.channels.size() == 1);
  CHECK(w.channels[0] == b.samples);
  const Matrix m = Matrix::Random(13, 7);
  WriteFeatureFile((dir / "f.bin").string(), m);
  const Matrix back = ReadFeatureFile((dir / "f.bin").string());
  CHECK((back - m).cwiseAbs().maxCoeff() < 1e-6);
  CheckThrowsKind([&] { ReadWav((dir / "missing.wav").string()); }, ErrorKind::kIo);
  fs::remove_all(dir);
}
