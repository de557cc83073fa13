// include/voxkit/nn/checkpoint.h

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

#ifndef VOXKIT_NN_CHECKPOINT_H_
#define VOXKIT_NN_CHECKPOINT_H_

#include <istream>
#include <ostream>
#include <string>

#include "voxkit/nn/network.h"

namespace voxkit::nn {

// Layout: "VXN1", u32 layer count, then per layer the kind tag, name, window
// geometry, frozen flag and every parameter tensor (shape + float32 values),
// then a u32-length key=value text block with the training configuration.

struct Checkpoint {
  Network net;
  std::string config;
};

void WriteCheckpoint(std::ostream &os, const Network &net, const std::string &config);
Checkpoint ReadCheckpoint(std::istream &is);

void SaveCheckpoint(const std::string &path, const Network &net, const std::string &config);
Checkpoint LoadCheckpoint(const std::string &path);

}  // namespace voxkit::nn

#endif  // VOXKIT_NN_CHECKPOINT_H_
