// src/nn/checkpoint.cc

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

#include "voxkit/nn/checkpoint.h"

#include <fstream>

#include "voxkit/binary_io.h"

namespace voxkit::nn {

namespace {

constexpr uint32_t kMaxString = 1u << 20;

void WriteString(std::ostream &os, const std::string &s) {
  io::WriteU32(os, static_cast<uint32_t>(s.size()));
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string ReadString(std::istream &is) {
  const uint32_t n = io::ReadU32(is);
  if (n > kMaxString) Fail(ErrorKind::kIo, "checkpoint string too long");
  std::string s(n, '\0');
  is.read(s.data(), n);
  if (!is) Fail(ErrorKind::kIo, "truncated checkpoint string");
  return s;
}

void WriteTensor(std::ostream &os, const Tensor &t) {
  const Shape &s = t.shape();
  for (int d : {s.n, s.c, s.h, s.w}) io::WriteU32(os, static_cast<uint32_t>(d));
  io::WriteF32s(os, t.data(), t.size());
}

Tensor ReadTensor(std::istream &is) {
  Shape s;
  s.n = static_cast<int>(io::ReadU32(is));
  s.c = static_cast<int>(io::ReadU32(is));
  s.h = static_cast<int>(io::ReadU32(is));
  s.w = static_cast<int>(io::ReadU32(is));
  if (s.Size() > (size_t{1} << 31)) Fail(ErrorKind::kIo, "checkpoint tensor too large");
  Tensor t(s);
  io::ReadF32s(is, t.data(), t.size());
  return t;
}

void WriteVector(std::ostream &os, const std::vector<double> &v) {
  io::WriteU32(os, static_cast<uint32_t>(v.size()));
  io::WriteF32s(os, v.data(), v.size());
}

std::vector<double> ReadVector(std::istream &is) {
  const uint32_t n = io::ReadU32(is);
  if (n > (1u << 28)) Fail(ErrorKind::kIo, "checkpoint vector too large");
  std::vector<double> v(n);
  io::ReadF32s(is, v.data(), n);
  return v;
}

}  // namespace

void WriteCheckpoint(std::ostream &os, const Network &net, const std::string &config) {
  io::WriteMagic(os, "VXN1");
  io::WriteU32(os, static_cast<uint32_t>(net.layers().size()));
  for (const Layer &l : net.layers()) {
    const LayerSpec &s = l.spec;
    io::WriteU32(os, static_cast<uint32_t>(s.kind));
    WriteString(os, l.name);
    for (int v : {s.support_h, s.support_w, s.filter_count, s.stride_h, s.stride_w, s.pad_h,
                  s.pad_w, s.full_width ? 1 : 0, l.frozen ? 1 : 0})
      io::WriteU32(os, static_cast<uint32_t>(v));
    WriteTensor(os, l.weight);
    WriteTensor(os, l.bias);
    WriteTensor(os, l.gamma);
    WriteTensor(os, l.beta);
    WriteVector(os, l.running_mean);
    WriteVector(os, l.running_var);
  }
  WriteString(os, config);
  if (!os) Fail(ErrorKind::kIo, "failed writing checkpoint");
}

Checkpoint ReadCheckpoint(std::istream &is) {
  io::ExpectMagic(is, "VXN1");
  Checkpoint ck;
  const uint32_t count = io::ReadU32(is);
  if (count > 4096) Fail(ErrorKind::kIo, "implausible layer count");
  for (uint32_t i = 0; i < count; ++i) {
    Layer l;
    const uint32_t kind = io::ReadU32(is);
    if (kind < 1 || kind > 7) Fail(ErrorKind::kIo, "unknown layer kind tag");
    l.spec.kind = static_cast<LayerKind>(kind);
    l.name = ReadString(is);
    int *fields[] = {&l.spec.support_h, &l.spec.support_w, &l.spec.filter_count,
                     &l.spec.stride_h,  &l.spec.stride_w,  &l.spec.pad_h,
                     &l.spec.pad_w};
    for (int *f : fields) *f = static_cast<int>(io::ReadU32(is));
    l.spec.full_width = io::ReadU32(is) != 0;
    l.frozen = io::ReadU32(is) != 0;
    l.weight = ReadTensor(is);
    l.bias = ReadTensor(is);
    l.gamma = ReadTensor(is);
    l.beta = ReadTensor(is);
    l.running_mean = ReadVector(is);
    l.running_var = ReadVector(is);
    ck.net.AddLayer(std::move(l));
  }
  ck.config = ReadString(is);
  return ck;
}

void SaveCheckpoint(const std::string &path, const Network &net, const std::string &config) {
  std::ofstream os(path, std::ios::binary);
  if (!os) Fail(ErrorKind::kIo, "cannot open " + path + " for writing");
  WriteCheckpoint(os, net, config);
}

Checkpoint LoadCheckpoint(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) Fail(ErrorKind::kIo, "cannot open " + path);
  return ReadCheckpoint(is);
}

}  // namespace voxkit::nn
