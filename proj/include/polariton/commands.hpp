// Copyright 2026 The polariton-engine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POLARITON_COMMANDS_HPP
#define POLARITON_COMMANDS_HPP

#include <cstdint>
#include <string>

namespace polariton {

struct CommandOptions {
  std::string subcommand;   // spectrum | cycle | trajectories | sweep
  std::string config_path;  // JSON run configuration
  std::string out_prefix;   // overrides the config's out_prefix when non-empty
  bool has_seed = false;    // --seed given on the command line
  std::uint64_t seed = 0;
  int threads = 1;
};

// Loads and validates the config, computes every result, then writes all
// output files (each one atomically via a temp file + rename).  Nothing is
// written for an invalid config, and a failure mid-computation leaves no
// partial outputs.  Returns 0 on success; throws ConfigError for bad input
// and other exceptions for runtime failures.
int run_command(const CommandOptions& options);

}  // namespace polariton

#endif  // POLARITON_COMMANDS_HPP
