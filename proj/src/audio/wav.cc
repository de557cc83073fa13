// src/audio/wav.cc

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

#include "voxkit/audio/wav.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "voxkit/common.h"

namespace voxkit {

namespace {

template <typename T>
T Get(const std::vector<char> &buf, size_t off) {
  T v;
  std::memcpy(&v, buf.data() + off, sizeof(T));
  return v;
}

template <typename T>
void Put(std::ofstream &os, T v) {
  os.write(reinterpret_cast<const char *>(&v), sizeof(T));
}

}  // namespace

WavData ReadWav(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) Fail(ErrorKind::kIo, "cannot open " + path);
  std::vector<char> buf((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  if (buf.size() < 12 || std::memcmp(buf.data(), "RIFF", 4) != 0 ||
      std::memcmp(buf.data() + 8, "WAVE", 4) != 0)
    Fail(ErrorKind::kInvalidAudio, path + ": not a RIFF/WAVE file");

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  size_t data_off = 0, data_len = 0;
  size_t off = 12;
  while (off + 8 <= buf.size()) {
    const uint32_t len = Get<uint32_t>(buf, off + 4);
    if (std::memcmp(buf.data() + off, "fmt ", 4) == 0 && off + 24 <= buf.size()) {
      format = Get<uint16_t>(buf, off + 8);
      channels = Get<uint16_t>(buf, off + 10);
      rate = Get<uint32_t>(buf, off + 12);
      bits = Get<uint16_t>(buf, off + 22);
    } else if (std::memcmp(buf.data() + off, "data", 4) == 0) {
      data_off = off + 8;
      data_len = std::min<size_t>(len, buf.size() - data_off);
      break;
    }
    off += 8 + len + (len & 1);
  }
  if (channels == 0 || data_off == 0) Fail(ErrorKind::kInvalidAudio, path + ": missing fmt/data chunk");
  const bool pcm16 = format == 1 && bits == 16;
  const bool float32 = format == 3 && bits == 32;
  if (!pcm16 && !float32)
    Fail(ErrorKind::kInvalidAudio, path + ": only 16-bit PCM and 32-bit float are supported");

  WavData wav;
  wav.sample_rate_hz = static_cast<int>(rate);
  const size_t bytes = bits / 8;
  const size_t frames = data_len / (bytes * channels);
  wav.channels.assign(channels, std::vector<double>(frames));
  for (size_t i = 0; i < frames; ++i) {
    for (size_t c = 0; c < channels; ++c) {
      const size_t p = data_off + (i * channels + c) * bytes;
      wav.channels[c][i] = pcm16 ? Get<int16_t>(buf, p) / 32768.0 : Get<float>(buf, p);
    }
  }
  return wav;
}

AudioBuffer LoadAudio16k(const std::string &path) {
  WavData wav = ReadWav(path);
  return ToMono16k(wav.channels, wav.sample_rate_hz);
}

void WriteWav16(const std::string &path, const AudioBuffer &audio) {
  std::ofstream os(path, std::ios::binary);
  if (!os) Fail(ErrorKind::kIo, "cannot write " + path);
  const auto n = static_cast<uint32_t>(audio.samples.size());
  const uint32_t data_bytes = n * 2;
  os.write("RIFF", 4);
  Put<uint32_t>(os, 36 + data_bytes);
  os.write("WAVEfmt ", 8);
  Put<uint32_t>(os, 16);
  Put<uint16_t>(os, 1);
  Put<uint16_t>(os, 1);
  Put<uint32_t>(os, static_cast<uint32_t>(audio.sample_rate_hz));
  Put<uint32_t>(os, static_cast<uint32_t>(audio.sample_rate_hz) * 2);
  Put<uint16_t>(os, 2);
  Put<uint16_t>(os, 16);
  os.write("data", 4);
  Put<uint32_t>(os, data_bytes);
  for (double v : audio.samples) {
    const double c = std::clamp(v, -1.0, 1.0);
    Put<int16_t>(os, static_cast<int16_t>(std::lround(std::min(c * 32768.0, 32767.0))));
  }
  if (!os) Fail(ErrorKind::kIo, "write failed for " + path);
}

}  // namespace voxkit
