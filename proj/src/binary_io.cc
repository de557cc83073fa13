// src/binary_io.cc

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

#include "voxkit/binary_io.h"

#include <cstring>

namespace voxkit::io {

namespace {

void CheckRead(std::istream &is, const char *what) {
  if (!is) Fail(ErrorKind::kIo, std::string("truncated stream while reading ") + what);
}

}  // namespace

void WriteMagic(std::ostream &os, const char (&magic)[5]) { os.write(magic, 4); }

void ExpectMagic(std::istream &is, const char (&magic)[5]) {
  char buf[4];
  is.read(buf, 4);
  CheckRead(is, "magic");
  if (std::memcmp(buf, magic, 4) != 0)
    Fail(ErrorKind::kIo, std::string("bad magic, expected ") + magic);
}

void WriteU32(std::ostream &os, uint32_t v) {
  os.write(reinterpret_cast<const char *>(&v), sizeof(v));
}

uint32_t ReadU32(std::istream &is) {
  uint32_t v = 0;
  is.read(reinterpret_cast<char *>(&v), sizeof(v));
  CheckRead(is, "u32");
  return v;
}

void WriteF64(std::ostream &os, double v) {
  os.write(reinterpret_cast<const char *>(&v), sizeof(v));
}

double ReadF64(std::istream &is) {
  double v = 0;
  is.read(reinterpret_cast<char *>(&v), sizeof(v));
  CheckRead(is, "f64");
  return v;
}

void WriteF64s(std::ostream &os, const double *data, size_t n) {
  os.write(reinterpret_cast<const char *>(data),
           static_cast<std::streamsize>(n * sizeof(double)));
}

void ReadF64s(std::istream &is, double *data, size_t n) {
  is.read(reinterpret_cast<char *>(data),
          static_cast<std::streamsize>(n * sizeof(double)));
  CheckRead(is, "f64 array");
}

void WriteF32s(std::ostream &os, const double *data, size_t n) {
  std::vector<float> tmp(data, data + n);
  os.write(reinterpret_cast<const char *>(tmp.data()),
           static_cast<std::streamsize>(n * sizeof(float)));
}

void ReadF32s(std::istream &is, double *data, size_t n) {
  std::vector<float> tmp(n);
  is.read(reinterpret_cast<char *>(tmp.data()),
          static_cast<std::streamsize>(n * sizeof(float)));
  CheckRead(is, "f32 array");
  for (size_t i = 0; i < n; ++i) data[i] = tmp[i];
}

void WriteMatrixF64(std::ostream &os, const Matrix &m) {
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = m;
  WriteF64s(os, rm.data(), static_cast<size_t>(rm.size()));
}

void ReadMatrixF64(std::istream &is, Matrix *m) {
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm(m->rows(),
                                                                           m->cols());
  ReadF64s(is, rm.data(), static_cast<size_t>(rm.size()));
  *m = rm;
}

}  // namespace voxkit::io
