// include/voxkit/corpus/synth.h

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

#ifndef VOXKIT_CORPUS_SYNTH_H_
#define VOXKIT_CORPUS_SYNTH_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "voxkit/audio/audio.h"
#include "voxkit/corpus/manifest.h"

namespace voxkit::corpus {

struct SynthOptions {
  int speakers = 10;
  int videos_per_speaker = 4;
  int utterances_per_video = 5;
  double min_duration_s = 3.0;
  double max_duration_s = 8.0;
  uint64_t seed = 42;
};

/// Fixed per-speaker source/filter parameters.
struct Voice {
  double f0_hz;
  std::array<double, 3> formants_hz;
  std::array<double, 3> bandwidths_hz;
  double tilt;  // one-pole low-pass coefficient
};

/// Per-video channel: first-order FIR colouring y = x + c x[n-1].
struct Channel {
  double coloration;
};

struct SyntheticCorpus {
  Manifest manifest;
  std::vector<AudioBuffer> audio;  // parallel to manifest
  std::vector<Voice> voices;       // one per speaker
};

/// Throws kInvalidInput when a count is below one or durations are below
/// one second (or min > max).
void ValidateSynthOptions(const SynthOptions &opts);

Voice MakeVoice(uint64_t seed, int speaker, bool male);
Channel MakeChannel(uint64_t seed, int speaker, int video);

/// Records only (durations are exact sample counts / 16 kHz); audio paths
/// are `wav/<utterance_id>.wav` relative to the corpus root.
Manifest PlanCorpus(const SynthOptions &opts);

/// Pulse train at a drifting f0 through three formant resonators, speaker
/// tilt and channel colouring under a syllabic envelope, plus white noise at
/// an SNR drawn from [5, 20] dB.  Samples are quantised to 16-bit steps so
/// the in-memory signal equals its WAV round trip.
AudioBuffer SynthesizeUtterance(const Voice &voice, const Channel &channel, int64_t n_samples,
                                uint64_t seed);

/// Whole corpus in memory, generated in parallel with per-utterance seeds.
SyntheticCorpus GenerateCorpus(const SynthOptions &opts);

/// Writes `<root>/wav/*.wav` and `<root>/manifest.jsonl`; returns the
/// manifest.
Manifest WriteSyntheticCorpus(const SynthOptions &opts, const std::string &root);

}  // namespace voxkit::corpus

#endif  // VOXKIT_CORPUS_SYNTH_H_
