// src/cli/commands.h

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

#ifndef VOXKIT_SRC_CLI_COMMANDS_H_
#define VOXKIT_SRC_CLI_COMMANDS_H_

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "voxkit/cli/config.h"

namespace voxkit::cli {

struct Command {
  std::string name;
  std::string summary;
  std::vector<KeySpec> keys;  // subcommand keys; common keys are added by the dispatcher
  std::function<void(const RunConfig &, std::ostream &out, std::ostream &log)> run;
};

const std::vector<Command> &Commands();

}  // namespace voxkit::cli

#endif  // VOXKIT_SRC_CLI_COMMANDS_H_
