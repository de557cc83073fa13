// src/cli/config.cc

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

#include "voxkit/cli/config.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace voxkit::cli {

namespace {

std::string Trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string Expand(std::string v, const std::string &data_dir) {
  const std::string token = "{data_dir}";
  for (auto p = v.find(token); p != std::string::npos; p = v.find(token, p + data_dir.size()))
    v.replace(p, token.size(), data_dir);
  return v;
}

}  // namespace

std::string FlagName(const std::string &key) {
  std::string f = key;
  std::replace(f.begin(), f.end(), '_', '-');
  return "--" + f;
}

std::map<std::string, std::string> ParseKeyValues(std::istream &is, const std::string &origin) {
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(origin + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = Trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '-', '_');
    out[key] = Trim(line.substr(eq + 1));
  }
  return out;
}

bool RunConfig::Has(const std::string &key) const { return values_.count(key) > 0; }

const std::string &RunConfig::Get(const std::string &key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw std::logic_error("undeclared config key " + key);
  return it->second;
}

int RunConfig::GetInt(const std::string &key) const {
  const std::string &v = Get(key);
  try {
    size_t used = 0;
    const long x = std::stol(v, &used);
    if (used == v.size() && x >= INT32_MIN && x <= INT32_MAX) return static_cast<int>(x);
  } catch (const std::exception &) {
  }
  throw UsageError(FlagName(key) + " expects an integer, got '" + v + "'");
}

uint64_t RunConfig::GetU64(const std::string &key) const {
  const std::string &v = Get(key);
  try {
    size_t used = 0;
    if (!v.empty() && v[0] != '-') {
      const unsigned long long x = std::stoull(v, &used);
      if (used == v.size()) return x;
    }
  } catch (const std::exception &) {
  }
  throw UsageError(FlagName(key) + " expects a non-negative integer, got '" + v + "'");
}

double RunConfig::GetDouble(const std::string &key) const {
  const std::string &v = Get(key);
  try {
    size_t used = 0;
    const double x = std::stod(v, &used);
    if (used == v.size()) return x;
  } catch (const std::exception &) {
  }
  throw UsageError(FlagName(key) + " expects a number, got '" + v + "'");
}

bool RunConfig::GetBool(const std::string &key) const {
  const std::string &v = Get(key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw UsageError(FlagName(key) + " expects true or false, got '" + v + "'");
}

std::vector<double> RunConfig::GetDoubleList(const std::string &key) const {
  std::vector<double> out;
  std::stringstream ss(Get(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception &) {
      throw UsageError(FlagName(key) + " expects comma-separated numbers, got '" + Get(key) + "'");
    }
  }
  if (out.empty()) throw UsageError(FlagName(key) + " is empty");
  return out;
}

std::string RunConfig::Dump() const {
  std::ostringstream os;
  for (const auto &k : keys_) os << k.name << '=' << Get(k.name) << '\n';
  return os.str();
}

std::string DefaultDataDir() {
  const char *env = std::getenv("VOXKIT_DATA_DIR");
  return env && *env ? env : "data";
}

RunConfig ResolveConfig(const std::vector<KeySpec> &keys, const std::map<std::string, std::string> &flags,
                        const std::string &config_path) {
  std::map<std::string, std::string> file;
  if (!config_path.empty()) {
    std::ifstream is(config_path);
    if (!is) throw UsageError("cannot open config file " + config_path);
    file = ParseKeyValues(is, config_path);
    for (const auto &[k, v] : file) {
      const bool known = std::any_of(keys.begin(), keys.end(), [&](const KeySpec &s) { return s.name == k; });
      if (!known) throw UsageError(config_path + ": unknown key '" + k + "'");
    }
  }
  auto pick = [&](const KeySpec &k) -> std::string {
    if (auto it = flags.find(k.name); it != flags.end()) return it->second;
    if (auto it = file.find(k.name); it != file.end()) return it->second;
    return k.fallback;
  };
  std::map<std::string, std::string> values;
  std::string data_dir = DefaultDataDir();
  for (const auto &k : keys)
    if (k.name == "data_dir") data_dir = pick(k);
  for (const auto &k : keys) values[k.name] = Expand(pick(k), data_dir);
  return RunConfig(keys, std::move(values));
}

}  // namespace voxkit::cli
