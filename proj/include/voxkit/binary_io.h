// include/voxkit/binary_io.h

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

#ifndef VOXKIT_BINARY_IO_H_
#define VOXKIT_BINARY_IO_H_

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "voxkit/common.h"

// Little-endian helpers shared by every model and feature file format.  All
// formats start with a four byte magic tag.

namespace voxkit::io {

static_assert(std::endian::native == std::endian::little,
              "file formats assume a little-endian host");

void WriteMagic(std::ostream &os, const char (&magic)[5]);
/// Throws kIo when the next four bytes differ from `magic`.
void ExpectMagic(std::istream &is, const char (&magic)[5]);

void WriteU32(std::ostream &os, uint32_t v);
uint32_t ReadU32(std::istream &is);

void WriteF64(std::ostream &os, double v);
double ReadF64(std::istream &is);

void WriteF64s(std::ostream &os, const double *data, size_t n);
void ReadF64s(std::istream &is, double *data, size_t n);

void WriteF32s(std::ostream &os, const double *data, size_t n);
void ReadF32s(std::istream &is, double *data, size_t n);

/// Row-major 64-bit matrix body (dimensions are written by the caller).
void WriteMatrixF64(std::ostream &os, const Matrix &m);
void ReadMatrixF64(std::istream &is, Matrix *m);

}  // namespace voxkit::io

#endif  // VOXKIT_BINARY_IO_H_
