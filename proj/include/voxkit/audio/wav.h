// include/voxkit/audio/wav.h

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

#ifndef VOXKIT_AUDIO_WAV_H_
#define VOXKIT_AUDIO_WAV_H_

#include <string>
#include <vector>

#include "voxkit/audio/audio.h"

namespace voxkit {

struct WavData {
  int sample_rate_hz = 0;
  /// One vector per channel, samples scaled to [-1, 1).
  std::vector<std::vector<double>> channels;
};

/// Reads RIFF/WAVE files holding 16-bit PCM or 32-bit IEEE float samples.
WavData ReadWav(const std::string &path);

/// Convenience: ReadWav followed by ToMono16k.
AudioBuffer LoadAudio16k(const std::string &path);

/// Writes 16-bit mono PCM; samples are clipped to [-1, 1].
void WriteWav16(const std::string &path, const AudioBuffer &audio);

}  // namespace voxkit

#endif  // VOXKIT_AUDIO_WAV_H_
