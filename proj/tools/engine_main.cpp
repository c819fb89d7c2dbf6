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

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "polariton/commands.hpp"
#include "polariton/run_config.hpp"

namespace {

// --threads beats ENGINE_THREADS beats the single-thread default.
int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("ENGINE_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || parsed < 1) {
      throw polariton::ConfigError(
          std::string("ENGINE_THREADS must be a positive integer, got \"") +
          env + "\"");
    }
    return static_cast<int>(parsed);
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Quantum Otto engine on a dressed qubit-photon system: dressed-level "
      "scans, analytic work accounting, master-equation cycles, and "
      "measurement-unraveled work distributions."};
  app.require_subcommand(1);

  polariton::CommandOptions options;
  int threads_flag = 0;

  const struct {
    const char* name;
    const char* help;
  } subs[] = {
      {"spectrum", "Dressed-level scan over a detuning grid (CSV)"},
      {"cycle", "Analytic and optional master-equation engine cycle (JSON)"},
      {"trajectories",
       "Stochastic measurement trajectories and work histograms (CSV)"},
      {"sweep", "Work accounting over a parameter grid (CSV)"},
  };
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--config", options.config_path, "JSON run config")
        ->required();
    sub->add_option("--out", options.out_prefix,
                    "Output prefix (overrides the config)");
    sub->add_option("--seed", options.seed,
                    "Master RNG seed (overrides the config)");
    sub->add_option("--threads", threads_flag,
                    "Worker threads (default: ENGINE_THREADS or 1)");
    sub->callback([&options, name = std::string(s.name)] {
      options.subcommand = name;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // bad command line is a configuration error
  }

  try {
    const CLI::App* sub = app.get_subcommand(options.subcommand);
    options.has_seed = sub->count("--seed") > 0;
    options.threads = resolve_threads(threads_flag);
    return polariton::run_command(options);
  } catch (const polariton::ConfigError& ex) {
    std::cerr << "config error: " << ex.what() << '\n';
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
}
