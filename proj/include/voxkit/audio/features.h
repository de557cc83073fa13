// include/voxkit/audio/features.h

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

#ifndef VOXKIT_AUDIO_FEATURES_H_
#define VOXKIT_AUDIO_FEATURES_H_

#include <cstdint>
#include <string>

#include "voxkit/audio/audio.h"
#include "voxkit/common.h"

namespace voxkit {

constexpr int kWindowSamples = 400;   // 25 ms at 16 kHz
constexpr int kHopSamples = 160;      // 10 ms at 16 kHz
constexpr int kFftSize = 1024;
constexpr int kSpectrogramBins = 512;
constexpr int kMfccDim = 13;
constexpr int kMelFilters = 26;
constexpr int kCropFrames = 300;      // 3 s of 10 ms frames
constexpr double kVarianceFloor = 1e-8;
constexpr double kLogFloor = 1e-10;

/// Short-time magnitude spectrogram, 512 frequency rows by T frame columns.
struct Spectrogram {
  static constexpr double kFrameStepSeconds = 0.010;
  static constexpr double kWindowSeconds = 0.025;
  Matrix magnitudes;

  int64_t Frames() const { return magnitudes.cols(); }
};

/// 13 cepstral coefficients per frame (C0 is the log frame energy).
struct MfccFrames {
  static constexpr double kFrameStepSeconds = 0.010;
  static constexpr double kWindowSeconds = 0.025;
  Matrix coeffs;

  int64_t Frames() const { return coeffs.cols(); }
};

/// Frame count for a buffer of n samples: round(n / hop).  Frames are
/// centred on t * hop + hop / 2 and reflect-padded at both ends.
int64_t FrameCount(int64_t n_samples);

/// Hamming-windowed |FFT| over 1024-point zero-padded 25 ms frames, one-sided
/// bins 0..511.  Throws kInvalidAudio if the buffer is shorter than a window.
Spectrogram ComputeSpectrogram(const AudioBuffer &buf);

/// Per-row mean/variance normalisation using this utterance's statistics.
Spectrogram NormalizeSpectrogram(const Spectrogram &spec);

/// 26 mel filters over 0-8 kHz, log floor 1e-10, DCT-II for C1..C12 and
/// log energy as C0.
MfccFrames ComputeMfcc(const AudioBuffer &buf);

MfccFrames Cmvn(const MfccFrames &frames);

/// Contiguous 512 x 300 crop at a seeded uniform offset.
Spectrogram RandomCrop3s(const Spectrogram &spec, uint64_t seed);

/// Row standardisation shared by NormalizeSpectrogram and Cmvn: each row gets
/// mean 0 and (population) variance 1, with variances floored at 1e-8.
Matrix StandardizeRows(const Matrix &m);

/// "VXF1" feature files: u32 rows, u32 cols, row-major float32 body.
void WriteFeatureFile(const std::string &path, const Matrix &m);
Matrix ReadFeatureFile(const std::string &path);

}  // namespace voxkit

#endif  // VOXKIT_AUDIO_FEATURES_H_
