// src/corpus/synth.cc

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

#include "voxkit/corpus/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include "voxkit/audio/wav.h"
#include "voxkit/common.h"

namespace voxkit::corpus {

namespace {

struct Persona {
  const char *name;
  bool male;
};

constexpr Persona kPersonas[] = {
    {"Alba", false}, {"Bruno", true}, {"Carmen", false}, {"Dario", true}, {"Elena", false},
    {"Felix", true}, {"Greta", false}, {"Hugo", true},   {"Ines", false}, {"Emil", true},
};
constexpr const char *kNationalities[] = {"Spain", "Italy", "Germany", "France", "Portugal", "Sweden", "Poland"};
constexpr int kPersonaCount = sizeof(kPersonas) / sizeof(kPersonas[0]);
constexpr double kUpdateSamples = 80;  // resonator coefficient refresh

std::string PoiId(int s) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "id%05d", s);
  return buf;
}

// Two-pole resonator with unity gain at DC.
struct Resonator {
  double a = 1, b = 0, c = 0, y1 = 0, y2 = 0;
  void Set(double freq, double bw) {
    const double r = std::exp(-std::numbers::pi * bw / kSampleRate);
    b = 2.0 * r * std::cos(2.0 * std::numbers::pi * freq / kSampleRate);
    c = -r * r;
    a = 1.0 - b - c;
  }
  double Step(double x) {
    const double y = a * x + b * y1 + c * y2;
    y2 = y1;
    y1 = y;
    return y;
  }
};

uint64_t UtteranceSeed(uint64_t seed, int s, int v, int u) {
  return DeriveSeed(seed, 0xA0D10 + static_cast<uint64_t>(s), static_cast<uint64_t>(v), static_cast<uint64_t>(u));
}

}  // namespace

void ValidateSynthOptions(const SynthOptions &o) {
  if (o.speakers < 1 || o.videos_per_speaker < 1 || o.utterances_per_video < 1)
    Fail(ErrorKind::kInvalidInput, "speaker, video and utterance counts must be at least one");
  if (!(o.min_duration_s >= 1.0) || !(o.max_duration_s >= o.min_duration_s))
    Fail(ErrorKind::kInvalidInput, "durations must satisfy 1 <= min <= max seconds");
}

Voice MakeVoice(uint64_t seed, int speaker, bool male) {
  Rng rng(DeriveSeed(seed, 0x5EED, static_cast<uint64_t>(speaker)));
  Voice v;
  v.f0_hz = male ? rng.Uniform(80.0, 160.0) : rng.Uniform(160.0, 300.0);
  const double scale = male ? 1.0 : 1.15;
  v.formants_hz = {scale * rng.Uniform(300.0, 850.0), scale * rng.Uniform(900.0, 2200.0),
                   scale * rng.Uniform(2300.0, 3300.0)};
  v.bandwidths_hz = {rng.Uniform(60.0, 120.0), rng.Uniform(80.0, 160.0), rng.Uniform(120.0, 220.0)};
  v.tilt = rng.Uniform(0.80, 0.97);
  return v;
}

Channel MakeChannel(uint64_t seed, int speaker, int video) {
  Rng rng(DeriveSeed(seed, 0xC4A, static_cast<uint64_t>(speaker), static_cast<uint64_t>(video)));
  return {rng.Uniform(-0.3, 0.3)};
}

Manifest PlanCorpus(const SynthOptions &opts) {
  ValidateSynthOptions(opts);
  Manifest m;
  for (int s = 0; s < opts.speakers; ++s) {
    const Persona &p = kPersonas[s % kPersonaCount];
    std::string name = p.name;
    if (s >= kPersonaCount) name += " " + std::to_string(s / kPersonaCount + 1);
    for (int v = 0; v < opts.videos_per_speaker; ++v)
      for (int u = 0; u < opts.utterances_per_video; ++u) {
        Rng rng(UtteranceSeed(opts.seed, s, v, u));
        const double dur = rng.Uniform(opts.min_duration_s, opts.max_duration_s);
        const int64_t n = std::llround(dur * kSampleRate);
        UtteranceRecord r;
        r.poi_id = PoiId(s);
        r.poi_name = name;
        r.gender = p.male ? "m" : "f";
        r.nationality = kNationalities[s % 7];
        char vid[32], utt[48];
        std::snprintf(vid, sizeof vid, "%s-v%02d", r.poi_id.c_str(), v);
        std::snprintf(utt, sizeof utt, "%s-u%03d", vid, u);
        r.video_id = vid;
        r.utterance_id = utt;
        r.audio_path = "wav/" + r.utterance_id + ".wav";
        r.duration_s = static_cast<double>(n) / kSampleRate;
        m.push_back(std::move(r));
      }
  }
  return m;
}

AudioBuffer SynthesizeUtterance(const Voice &voice, const Channel &channel, int64_t n_samples, uint64_t seed) {
  if (n_samples < 1) Fail(ErrorKind::kInvalidInput, "utterance must have at least one sample");
  Rng rng(DeriveSeed(seed, 0x5A7));
  const double two_pi = 2.0 * std::numbers::pi;
  const double f0 = voice.f0_hz * (1.0 + 0.04 * std::clamp(rng.Normal(), -2.0, 2.0));
  const double vib_rate = rng.Uniform(0.3, 1.2), vib_phase = rng.Uniform(0.0, two_pi);
  const double syl_rate = rng.Uniform(3.0, 5.0), syl_phase = rng.Uniform(0.0, 1.0);
  std::array<double, 3> fmt, rate, phase;
  for (int i = 0; i < 3; ++i) {
    fmt[i] = voice.formants_hz[i] * (1.0 + 0.02 * std::clamp(rng.Normal(), -2.0, 2.0));
    rate[i] = rng.Uniform(1.5, 4.0);
    phase[i] = rng.Uniform(0.0, two_pi);
  }
  const double snr_db = rng.Uniform(5.0, 20.0);

  std::vector<double> speech(static_cast<size_t>(n_samples));
  std::array<Resonator, 3> res;
  double glottal = 0.0, tilt_state = 0.0, prev = 0.0;
  for (int64_t n = 0; n < n_samples; ++n) {
    const double t = static_cast<double>(n) / kSampleRate;
    if (n % static_cast<int64_t>(kUpdateSamples) == 0)
      for (int i = 0; i < 3; ++i) res[i].Set(fmt[i] * (1.0 + 0.08 * std::sin(two_pi * rate[i] * t + phase[i])), voice.bandwidths_hz[i]);
    const double f = f0 * (1.0 + 0.05 * std::sin(two_pi * vib_rate * t + vib_phase));
    glottal += f / kSampleRate;
    double src = 0.05 * rng.Normal();
    if (glottal >= 1.0) {
      glottal -= 1.0;
      src += 1.0;
    }
    double x = src;
    for (auto &r : res) x = r.Step(x);
    tilt_state = x + voice.tilt * tilt_state;
    const double colored = tilt_state + channel.coloration * prev;
    prev = tilt_state;
    const double syl = std::sin(std::numbers::pi * std::fmod(syl_rate * t + syl_phase, 1.0));
    speech[static_cast<size_t>(n)] = colored * std::pow(std::max(syl, 0.0), 0.6);
  }
  double power = 0.0;
  for (double v : speech) power += v * v;
  const double rms = std::sqrt(power / static_cast<double>(n_samples));
  const double gain = rms > 0.0 ? 0.1 / rms : 0.0;
  const double noise_sd = 0.1 * std::pow(10.0, -snr_db / 20.0);
  AudioBuffer out;
  out.samples.resize(speech.size());
  for (size_t i = 0; i < speech.size(); ++i) {
    const double v = std::clamp(gain * speech[i] + noise_sd * rng.Normal(), -0.99, 0.99);
    out.samples[i] = std::round(v * 32768.0) / 32768.0;
  }
  return out;
}

SyntheticCorpus GenerateCorpus(const SynthOptions &opts) {
  SyntheticCorpus c;
  c.manifest = PlanCorpus(opts);
  for (int s = 0; s < opts.speakers; ++s)
    c.voices.push_back(MakeVoice(opts.seed, s, kPersonas[s % kPersonaCount].male));
  c.audio.resize(c.manifest.size());
  const int per_spk = opts.videos_per_speaker * opts.utterances_per_video;
#pragma omp parallel for schedule(dynamic)
  for (size_t i = 0; i < c.manifest.size(); ++i) {
    const int s = static_cast<int>(i) / per_spk;
    const int v = (static_cast<int>(i) % per_spk) / opts.utterances_per_video;
    const int u = static_cast<int>(i) % opts.utterances_per_video;
    const auto n = std::llround(c.manifest[i].duration_s * kSampleRate);
    c.audio[i] = SynthesizeUtterance(c.voices[static_cast<size_t>(s)], MakeChannel(opts.seed, s, v), n,
                                     UtteranceSeed(opts.seed, s, v, u));
  }
  return c;
}

Manifest WriteSyntheticCorpus(const SynthOptions &opts, const std::string &root) {
  namespace fs = std::filesystem;
  const SyntheticCorpus c = GenerateCorpus(opts);
  std::error_code ec;
  fs::create_directories(fs::path(root) / "wav", ec);
  if (ec) Fail(ErrorKind::kIo, "cannot create " + root + "/wav: " + ec.message());
  for (size_t i = 0; i < c.manifest.size(); ++i)
    WriteWav16((fs::path(root) / c.manifest[i].audio_path).string(), c.audio[i]);
  SaveManifest((fs::path(root) / "manifest.jsonl").string(), c.manifest);
  return c.manifest;
}

}  // namespace voxkit::corpus
