// src/cli/dispatch.cc

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

#include "voxkit/cli/dispatch.h"

#include <filesystem>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "commands.h"
#include "voxkit/common.h"

namespace voxkit::cli {

namespace {

std::vector<KeySpec> CommonKeys() {
  return {{"config", "", "key=value config file; flags override its values"},
          {"threads", "1", "worker threads (0 = OpenMP default); 1 is bit-reproducible"},
          {"seed", "42", "random seed"},
          {"data_dir", DefaultDataDir(), "data root (default $VOXKIT_DATA_DIR or ./data)"}};
}

std::string Usage() {
  std::string s = "usage: voxkit <subcommand> [--flag value ...]\n\nsubcommands:\n";
  for (const auto &c : Commands()) {
    s += "  " + c.name + std::string(c.name.size() < 18 ? 18 - c.name.size() : 1, ' ') + c.summary + "\n";
  }
  s += "\nrun 'voxkit <subcommand> --help' for its flags\n";
  return s;
}

}  // namespace

std::vector<std::string> SubcommandNames() {
  std::vector<std::string> names;
  for (const auto &c : Commands()) names.push_back(c.name);
  return names;
}

int Dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  if (args.empty()) {
    err << Usage();
    return kExitUsage;
  }
  const Command *cmd = nullptr;
  for (const auto &c : Commands())
    if (c.name == args[0]) cmd = &c;
  if (args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
    out << Usage();
    return kExitOk;
  }
  if (!cmd) {
    err << "unknown subcommand '" << args[0] << "'\n\n" << Usage();
    return kExitUsage;
  }

  std::vector<KeySpec> keys = CommonKeys();
  keys.insert(keys.end(), cmd->keys.begin(), cmd->keys.end());

  CLI::App app{cmd->summary, "voxkit " + cmd->name};
  app.get_formatter()->column_width(30);
  std::map<std::string, std::string> storage;
  std::map<std::string, CLI::Option *> options;
  for (const auto &k : keys) {
    std::string help = k.help;
    if (!k.fallback.empty()) help += " [default: " + k.fallback + "]";
    options[k.name] = app.add_option(FlagName(k.name), storage[k.name], help);
  }

  std::vector<std::string> rest(args.rbegin(), args.rend() - 1);  // CLI11 wants them reversed
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "voxkit " << cmd->name << ": " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    std::map<std::string, std::string> given;
    for (const auto &k : keys)
      if (options[k.name]->count() > 0) given[k.name] = storage[k.name];
    const RunConfig cfg = ResolveConfig(keys, given, given.count("config") ? given["config"] : "");
    const int threads = cfg.GetInt("threads");
    if (threads < 0) throw UsageError("--threads must be non-negative");
    SetNumThreads(threads);
    cmd->run(cfg, out, err);
    out.flush();
    return kExitOk;
  } catch (const UsageError &e) {
    err << "voxkit " << cmd->name << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const VoxError &e) {
    err << "voxkit " << cmd->name << ": " << e.what() << '\n';
    return kExitData;
  } catch (const std::filesystem::filesystem_error &e) {
    err << "voxkit " << cmd->name << ": " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception &e) {
    err << "voxkit " << cmd->name << ": " << e.what() << '\n';
    return kExitData;
  }
}

int Dispatch(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return Dispatch(args, std::cout, std::cerr);
}

}  // namespace voxkit::cli
