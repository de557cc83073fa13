// tests/support/toy_data.h

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

#ifndef VOXKIT_TESTS_TOY_DATA_H_
#define VOXKIT_TESTS_TOY_DATA_H_

#include <vector>

#include "voxkit/audio/features.h"
#include "voxkit/common.h"

namespace voxkit::testing {

/// Random 512-row "spectrograms" whose rows carry a class-specific offset
/// pattern.  Label i % classes for item i.
inline std::vector<Spectrogram> ToySpectrograms(int count, int classes, int frames, uint64_t seed,
                                                std::vector<int> *labels) {
  std::vector<Vector> patterns;
  Rng prng(DeriveSeed(seed, 1));
  for (int c = 0; c < classes; ++c) {
    Vector p(kSpectrogramBins);
    for (int r = 0; r < kSpectrogramBins; ++r) p[r] = prng.Normal() * 1.5;
    patterns.push_back(p);
  }
  std::vector<Spectrogram> out;
  labels->clear();
  Rng rng(DeriveSeed(seed, 2));
  for (int i = 0; i < count; ++i) {
    const int y = i % classes;
    Spectrogram s;
    s.magnitudes.resize(kSpectrogramBins, frames);
    for (int t = 0; t < frames; ++t)
      for (int r = 0; r < kSpectrogramBins; ++r)
        s.magnitudes(r, t) = patterns[static_cast<size_t>(y)][r] + rng.Normal();
    out.push_back(std::move(s));
    labels->push_back(y);
  }
  return out;
}

}  // namespace voxkit::testing

#endif  // VOXKIT_TESTS_TOY_DATA_H_
