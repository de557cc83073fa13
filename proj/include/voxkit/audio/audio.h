// include/voxkit/audio/audio.h

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

#ifndef VOXKIT_AUDIO_AUDIO_H_
#define VOXKIT_AUDIO_AUDIO_H_

#include <vector>

namespace voxkit {

constexpr int kSampleRate = 16000;

/// Mono waveform.  After ToMono16k the rate is always kSampleRate and every
/// sample is finite.
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate_hz = kSampleRate;

  double DurationSeconds() const {
    return static_cast<double>(samples.size()) / sample_rate_hz;
  }
};

/// Averages the channels and resamples to 16 kHz with a windowed-sinc
/// interpolator.  `channels` holds one equally sized sample vector per
/// channel.  Throws kInvalidAudio on empty, ragged or non-finite input.
AudioBuffer ToMono16k(const std::vector<std::vector<double>> &channels, int rate_hz);

/// Band-limited resampling of a single channel; output length is
/// round(n * to / from).
std::vector<double> Resample(const std::vector<double> &x, int from_hz, int to_hz);

}  // namespace voxkit

#endif  // VOXKIT_AUDIO_AUDIO_H_
