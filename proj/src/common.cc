// src/common.cc

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

#include "voxkit/common.h"

#include <cmath>

#include <omp.h>

namespace voxkit {

const char *ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidAudio: return "InvalidAudio";
    case ErrorKind::kInsufficientData: return "InsufficientData";
    case ErrorKind::kModelMismatch: return "ModelMismatch";
    case ErrorKind::kInvalidInput: return "InvalidInput";
    case ErrorKind::kInvalidState: return "InvalidState";
    case ErrorKind::kSplitInfeasible: return "SplitInfeasible";
    case ErrorKind::kNoOperatingPoint: return "NoOperatingPoint";
    case ErrorKind::kIo: return "IoError";
  }
  return "Error";
}

uint64_t Rng::Index(uint64_t n) {
  if (n == 0) Fail(ErrorKind::kInvalidInput, "Rng::Index with n == 0");
  // Largest multiple of n representable; reject draws above it.
  uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

double Rng::Normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * Uniform() - 1.0;
    v = 2.0 * Uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  double m = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * m;
  has_spare_ = true;
  return u * m;
}

static uint64_t SplitMix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t DeriveSeed(uint64_t base, uint64_t a, uint64_t b, uint64_t c) {
  uint64_t h = SplitMix(base);
  h = SplitMix(h ^ a);
  h = SplitMix(h ^ b);
  return SplitMix(h ^ c);
}

void SetNumThreads(int n) {
  if (n > 0) omp_set_num_threads(n);
}

int NumThreads() { return omp_get_max_threads(); }

}  // namespace voxkit
