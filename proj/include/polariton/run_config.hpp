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

#ifndef POLARITON_RUN_CONFIG_HPP
#define POLARITON_RUN_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "polariton/dynamics.hpp"
#include "polariton/otto_engine.hpp"

namespace polariton {

// Dressed-level scan over a detuning grid.
struct SpectrumSection {
  double delta_min = -0.5;
  double delta_max = 0.5;
  int points = 101;
  bool include_n1 = false;
  bool two_qubit = false;
};

struct CycleSection {
  bool numeric = false;
  double dt = -1.0;  // <= 0: automatic step
};

struct TrajectoriesSection {
  MeasurementKind scheme = MeasurementKind::dispersive;
  std::vector<double> lambdas{0.0};
  int n_traj = 1000;
  std::uint64_t seed = 1;
  double bin_width = 0.005;
  double dt = -1.0;  // <= 0: 0.01
  double p1 = -1.0;  // < 0: thermal p_1(n_bar)
};

struct SweepSection {
  std::string variable = "n_bar";  // n_bar | delta_1 | delta_2 | lambda
  std::vector<double> grid;
  bool numeric = false;
  double dt = -1.0;
};

// Where n_bar came from, for echoing both unit systems in outputs.
struct ThermalSpec {
  bool from_temperature = false;
  double omega_l_hz = 0.0;
  double t_kelvin = 0.0;
};

struct RunConfig {
  std::string subcommand;
  std::string out_prefix = "engine_out";
  EngineConfig engine;
  ThermalSpec thermal;
  SpectrumSection spectrum;
  CycleSection cycle;
  TrajectoriesSection trajectories;
  SweepSection sweep;
  std::string raw_document;  // the config file as parsed, re-serialized
};

// Invalid configuration; the CLI maps it to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses the JSON config at `path` and validates it for `subcommand`,
// aggregating every violation into one ConfigError so nothing is computed
// (and no file written) for a bad config.  Physical-unit thermal input
// (omega_l_hz, t_f_kelvin) is converted to n_bar here.
RunConfig load_run_config(const std::string& path, const std::string& subcommand);

}  // namespace polariton

#endif  // POLARITON_RUN_CONFIG_HPP
