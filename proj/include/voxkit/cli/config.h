// include/voxkit/cli/config.h

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

#ifndef VOXKIT_CLI_CONFIG_H_
#define VOXKIT_CLI_CONFIG_H_

#include <cstdint>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace voxkit::cli {

/// Bad command line or config: reported with exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct KeySpec {
  std::string name;      // config key; the flag is --name with '_' -> '-'
  std::string fallback;  // default; "{data_dir}" expands to the data root
  std::string help;
};

std::string FlagName(const std::string &key);

/// key=value lines, '#' starts a comment, blank lines ignored.  Throws
/// UsageError on a line without '='.
std::map<std::string, std::string> ParseKeyValues(std::istream &is, const std::string &origin);

/// Resolved settings of one subcommand run: flag, then config file, then
/// default.
class RunConfig {
 public:
  RunConfig() = default;
  RunConfig(std::vector<KeySpec> keys, std::map<std::string, std::string> values)
      : keys_(std::move(keys)), values_(std::move(values)) {}

  bool Has(const std::string &key) const;
  const std::string &Get(const std::string &key) const;
  std::string GetPath(const std::string &key) const { return Get(key); }
  int GetInt(const std::string &key) const;
  uint64_t GetU64(const std::string &key) const;
  double GetDouble(const std::string &key) const;
  bool GetBool(const std::string &key) const;
  std::vector<double> GetDoubleList(const std::string &key) const;

  const std::vector<KeySpec> &keys() const { return keys_; }
  /// Every key as key=value, in declaration order.
  std::string Dump() const;

 private:
  std::vector<KeySpec> keys_;
  std::map<std::string, std::string> values_;
};

/// $VOXKIT_DATA_DIR or "data".
std::string DefaultDataDir();

/// Merges flag values (only keys actually given), config file values and
/// defaults.  Unknown config-file keys raise UsageError.
RunConfig ResolveConfig(const std::vector<KeySpec> &keys, const std::map<std::string, std::string> &flags,
                        const std::string &config_path);

}  // namespace voxkit::cli

#endif  // VOXKIT_CLI_CONFIG_H_
