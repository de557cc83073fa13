// include/voxkit/common.h

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

#ifndef VOXKIT_COMMON_H_
#define VOXKIT_COMMON_H_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace voxkit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class ErrorKind {
  kInvalidAudio,
  kInsufficientData,
  kModelMismatch,
  kInvalidInput,
  kInvalidState,
  kSplitInfeasible,
  kNoOperatingPoint,
  kIo,
};

const char *ErrorKindName(ErrorKind kind);

/// All library failures surface as a VoxError tagged with the failure class.
class VoxError : public std::runtime_error {
 public:
  VoxError(ErrorKind kind, const std::string &what)
      : std::runtime_error(std::string(ErrorKindName(kind)) + ": " + what),
        kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void Fail(ErrorKind kind, const std::string &what) {
  throw VoxError(kind, what);
}

/// Seeded generator with implementation-independent draws.  The standard
/// distributions are not portable across standard libraries, so the few we
/// need are written out here on top of mt19937_64.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  /// Uniform in [0, 1).
  double Uniform() { return (engine_() >> 11) * 0x1.0p-53; }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  /// Uniform integer in [0, n), rejection sampled.
  uint64_t Index(uint64_t n);
  /// Uniform integer in [lo, hi].
  int64_t IntInRange(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(Index(static_cast<uint64_t>(hi - lo) + 1));
  }

  double Normal();
  double Normal(double mean, double stddev) { return mean + stddev * Normal(); }

  template <typename It>
  void Shuffle(It first, It last) {
    auto n = last - first;
    for (auto i = n - 1; i > 0; --i) {
      auto j = static_cast<decltype(i)>(Index(static_cast<uint64_t>(i) + 1));
      std::swap(first[i], first[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Derives an independent stream seed from a base seed and a path of ids
/// (splitmix64 mixing).
uint64_t DeriveSeed(uint64_t base, uint64_t a, uint64_t b = 0, uint64_t c = 0);

/// Sets the worker count used by OpenMP regions; n <= 0 leaves the default.
void SetNumThreads(int n);
int NumThreads();

}  // namespace voxkit

#endif  // VOXKIT_COMMON_H_
