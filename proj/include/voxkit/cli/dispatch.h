// include/voxkit/cli/dispatch.h

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

#ifndef VOXKIT_CLI_DISPATCH_H_
#define VOXKIT_CLI_DISPATCH_H_

#include <ostream>
#include <string>
#include <vector>

namespace voxkit::cli {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

/// Runs one subcommand.  Results go to `out` (unless --out names a file),
/// diagnostics and usage text to `err`.
int Dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
int Dispatch(int argc, char **argv);

/// Names of all subcommands in the order they are listed in usage text.
std::vector<std::string> SubcommandNames();

}  // namespace voxkit::cli

#endif  // VOXKIT_CLI_DISPATCH_H_
