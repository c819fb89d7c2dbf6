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

#include "polariton/run_config.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace polariton {

namespace {

using Json = nlohmann::ordered_json;

void check_keys(const Json& obj, const std::string& section,
                std::initializer_list<const char*> allowed,
                std::vector<std::string>& errs) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      errs.push_back(section + ": unknown key \"" + item.key() + "\"");
    }
  }
}

bool take_number(const Json& obj, const std::string& section, const char* key,
                 double& out, std::vector<std::string>& errs) {
  auto it = obj.find(key);
  if (it == obj.end()) return false;
  if (!it->is_number()) {
    errs.push_back(section + "." + key + " must be a number");
    return false;
  }
  out = it->get<double>();
  if (!std::isfinite(out)) {
    errs.push_back(section + "." + key + " must be finite");
    return false;
  }
  return true;
}

bool take_int(const Json& obj, const std::string& section, const char* key,
              int& out, std::vector<std::string>& errs) {
  auto it = obj.find(key);
  if (it == obj.end()) return false;
  if (!it->is_number_integer()) {
    errs.push_back(section + "." + key + " must be an integer");
    return false;
  }
  out = it->get<int>();
  return true;
}

bool take_bool(const Json& obj, const std::string& section, const char* key,
               bool& out, std::vector<std::string>& errs) {
  auto it = obj.find(key);
  if (it == obj.end()) return false;
  if (!it->is_boolean()) {
    errs.push_back(section + "." + key + " must be a boolean");
    return false;
  }
  out = it->get<bool>();
  return true;
}

bool take_string(const Json& obj, const std::string& section, const char* key,
                 std::string& out, std::vector<std::string>& errs) {
  auto it = obj.find(key);
  if (it == obj.end()) return false;
  if (!it->is_string()) {
    errs.push_back(section + "." + key + " must be a string");
    return false;
  }
  out = it->get<std::string>();
  return true;
}

// Accepts a number or an array of numbers; appends the values to `out`.
bool take_number_list(const Json& obj, const std::string& section,
                      const char* key, std::vector<double>& out,
                      std::vector<std::string>& errs) {
  auto it = obj.find(key);
  if (it == obj.end()) return false;
  if (it->is_number()) {
    out.assign(1, it->get<double>());
    return true;
  }
  if (!it->is_array() || it->empty()) {
    errs.push_back(section + "." + key +
                   " must be a number or a non-empty array of numbers");
    return false;
  }
  out.clear();
  for (const auto& v : *it) {
    if (!v.is_number() || !std::isfinite(v.get<double>())) {
      errs.push_back(section + "." + key + " entries must be finite numbers");
      return false;
    }
    out.push_back(v.get<double>());
  }
  return true;
}

void parse_engine(const Json& obj, RunConfig& cfg,
                  std::vector<std::string>& errs) {
  check_keys(obj, "engine",
             {"delta_1", "delta_2", "g", "kappa", "gamma", "n_bar",
              "omega_l_hz", "t_f_kelvin", "tau", "fock_cutoff", "field_prep"},
             errs);
  EngineConfig& e = cfg.engine;
  take_number(obj, "engine", "delta_1", e.delta_1, errs);
  take_number(obj, "engine", "delta_2", e.delta_2, errs);
  take_number(obj, "engine", "g", e.g, errs);
  take_number(obj, "engine", "kappa", e.kappa, errs);
  take_number(obj, "engine", "gamma", e.gamma, errs);

  double n_bar = 0.0;
  double omega_hz = 0.0;
  double t_kelvin = 0.0;
  const bool has_n_bar = take_number(obj, "engine", "n_bar", n_bar, errs);
  const bool has_omega =
      take_number(obj, "engine", "omega_l_hz", omega_hz, errs);
  const bool has_temp =
      take_number(obj, "engine", "t_f_kelvin", t_kelvin, errs);
  if (has_n_bar && (has_omega || has_temp)) {
    errs.push_back(
        "engine: give either n_bar or the pair (omega_l_hz, t_f_kelvin), "
        "not both");
  } else if (has_omega != has_temp) {
    errs.push_back("engine: omega_l_hz and t_f_kelvin must be given together");
  } else if (has_omega && has_temp) {
    if (omega_hz <= 0.0 || t_kelvin <= 0.0) {
      errs.push_back("engine: omega_l_hz and t_f_kelvin must be positive");
    } else {
      e.n_bar = thermal_photon_number(omega_hz, t_kelvin);
      cfg.thermal = ThermalSpec{true, omega_hz, t_kelvin};
    }
  } else if (has_n_bar) {
    e.n_bar = n_bar;
  }

  if (auto it = obj.find("tau"); it != obj.end()) {
    if (!it->is_array() || it->size() != 4) {
      errs.push_back("engine.tau must be an array of 4 stroke durations");
    } else {
      for (int i = 0; i < 4; ++i) {
        const auto& v = (*it)[static_cast<std::size_t>(i)];
        if (!v.is_number() || !std::isfinite(v.get<double>())) {
          errs.push_back("engine.tau entries must be finite numbers");
          break;
        }
        e.tau[static_cast<std::size_t>(i)] = v.get<double>();
      }
    }
  }

  if (auto it = obj.find("fock_cutoff"); it != obj.end()) {
    if (it->is_string() && it->get<std::string>() == "auto") {
      e.fock_cutoff = -1;
    } else if (it->is_number_integer() && it->get<int>() >= 1) {
      e.fock_cutoff = it->get<int>();
    } else {
      errs.push_back("engine.fock_cutoff must be \"auto\" or an integer >= 1");
    }
  }

  std::string prep;
  if (take_string(obj, "engine", "field_prep", prep, errs)) {
    if (prep == "thermal") {
      e.field_prep = FieldPrep::thermal;
    } else if (prep == "even_only") {
      e.field_prep = FieldPrep::even_only;
    } else {
      errs.push_back("engine.field_prep must be \"thermal\" or \"even_only\"");
    }
  }
}

void parse_spectrum(const Json& obj, SpectrumSection& s,
                    std::vector<std::string>& errs) {
  check_keys(obj, "spectrum",
             {"delta_min", "delta_max", "points", "include_n1", "two_qubit"},
             errs);
  take_number(obj, "spectrum", "delta_min", s.delta_min, errs);
  take_number(obj, "spectrum", "delta_max", s.delta_max, errs);
  take_int(obj, "spectrum", "points", s.points, errs);
  take_bool(obj, "spectrum", "include_n1", s.include_n1, errs);
  take_bool(obj, "spectrum", "two_qubit", s.two_qubit, errs);
}

void parse_cycle(const Json& obj, CycleSection& c,
                 std::vector<std::string>& errs) {
  check_keys(obj, "cycle", {"numeric", "dt"}, errs);
  take_bool(obj, "cycle", "numeric", c.numeric, errs);
  take_number(obj, "cycle", "dt", c.dt, errs);
}

void parse_trajectories(const Json& obj, TrajectoriesSection& t,
                        std::vector<std::string>& errs) {
  check_keys(
      obj, "trajectories",
      {"scheme", "lambda", "n_traj", "seed", "bin_width", "dt", "p1"}, errs);
  std::string scheme;
  if (take_string(obj, "trajectories", "scheme", scheme, errs)) {
    if (scheme == "none") {
      t.scheme = MeasurementKind::none;
    } else if (scheme == "dispersive") {
      t.scheme = MeasurementKind::dispersive;
    } else if (scheme == "absorptive") {
      t.scheme = MeasurementKind::absorptive;
    } else {
      errs.push_back(
          "trajectories.scheme must be \"none\", \"dispersive\" or "
          "\"absorptive\"");
    }
  }
  take_number_list(obj, "trajectories", "lambda", t.lambdas, errs);
  take_int(obj, "trajectories", "n_traj", t.n_traj, errs);
  take_number(obj, "trajectories", "bin_width", t.bin_width, errs);
  take_number(obj, "trajectories", "dt", t.dt, errs);
  take_number(obj, "trajectories", "p1", t.p1, errs);
  if (auto it = obj.find("seed"); it != obj.end()) {
    if (!it->is_number_integer() || it->get<std::int64_t>() < 0) {
      errs.push_back("trajectories.seed must be a non-negative integer");
    } else {
      t.seed = it->get<std::uint64_t>();
    }
  }
}

void parse_sweep(const Json& obj, SweepSection& s,
                 std::vector<std::string>& errs) {
  check_keys(obj, "sweep", {"variable", "grid", "numeric", "dt"}, errs);
  take_string(obj, "sweep", "variable", s.variable, errs);
  take_number_list(obj, "sweep", "grid", s.grid, errs);
  take_bool(obj, "sweep", "numeric", s.numeric, errs);
  take_number(obj, "sweep", "dt", s.dt, errs);
}

// Collects every violated engine precondition instead of stopping at the
// first, so one round trip reports the full repair list.
void append_engine_errors(const EngineConfig& engine,
                          std::vector<std::string>& errs) {
  try {
    validate(engine);
  } catch (const std::invalid_argument& ex) {
    errs.push_back(ex.what());
  }
}

void validate_trajectory_params(const RunConfig& cfg,
                                std::vector<std::string>& errs) {
  const TrajectoriesSection& t = cfg.trajectories;
  if (cfg.engine.field_prep == FieldPrep::even_only) {
    errs.push_back(
        "trajectories: field_prep even_only is an analytic-accounting "
        "preparation; trajectory unraveling requires thermal");
  }
  if (t.n_traj < 1) errs.push_back("trajectories.n_traj must be >= 1");
  if (!(t.bin_width > 0.0)) {
    errs.push_back("trajectories.bin_width must be > 0");
  }
  if (t.lambdas.empty()) {
    errs.push_back("trajectories.lambda must contain at least one value");
  }
  double lambda_max = 0.0;
  for (double lam : t.lambdas) {
    if (!(lam >= 0.0) || !std::isfinite(lam)) {
      errs.push_back("trajectories.lambda values must be >= 0 and finite");
      break;
    }
    lambda_max = std::max(lambda_max, lam);
  }
  if (t.scheme == MeasurementKind::none && lambda_max > 0.0) {
    errs.push_back("trajectories: scheme \"none\" requires lambda = 0");
  }
  if (t.dt > 0.0) {
    if (t.dt * cfg.engine.g >= 0.05) {
      errs.push_back("trajectories.dt too coarse: require dt * g < 0.05");
    }
    if (t.dt * lambda_max >= 0.01) {
      errs.push_back(
          "trajectories.dt too coarse: require dt * lambda < 0.01");
    }
  }
  if (t.p1 >= 0.0 && t.p1 > 1.0) {
    errs.push_back("trajectories.p1 must lie in [0, 1]");
  }
}

void validate_for_subcommand(RunConfig& cfg, std::vector<std::string>& errs) {
  const std::string& sub = cfg.subcommand;
  if (sub == "spectrum") {
    // The scan tolerates parameter sets the engine rejects (g = 0 shows the
    // bare level crossing), so only the fields it reads are constrained.
    if (!(cfg.engine.g >= 0.0)) errs.push_back("engine.g must be >= 0");
    const SpectrumSection& s = cfg.spectrum;
    if (s.points < 1) errs.push_back("spectrum.points must be >= 1");
    if (s.points > 1 && !(s.delta_max > s.delta_min)) {
      errs.push_back(
          "spectrum.delta_max must exceed delta_min when points > 1");
    }
    return;
  }

  append_engine_errors(cfg.engine, errs);

  if (sub == "cycle") {
    if (cfg.cycle.numeric) {
      if (cfg.engine.field_prep == FieldPrep::even_only) {
        errs.push_back(
            "cycle: numeric evolution rethermalizes the field, so "
            "field_prep even_only is analytic-only");
      }
      if (!(cfg.engine.kappa > 0.0) || !(cfg.engine.gamma > 0.0)) {
        errs.push_back(
            "cycle: numeric evolution needs kappa > 0 and gamma > 0 so the "
            "hold strokes reach their fixed points");
      }
    }
  } else if (sub == "trajectories") {
    validate_trajectory_params(cfg, errs);
  } else if (sub == "sweep") {
    const SweepSection& s = cfg.sweep;
    const bool known_var = s.variable == "n_bar" || s.variable == "delta_1" ||
                           s.variable == "delta_2" || s.variable == "lambda";
    if (!known_var) {
      errs.push_back(
          "sweep.variable must be one of n_bar, delta_1, delta_2, lambda");
      return;
    }
    if (s.grid.empty()) {
      errs.push_back("sweep.grid must contain at least one value");
      return;
    }
    if (s.variable == "lambda") {
      if (s.numeric) {
        errs.push_back(
            "sweep: lambda sweeps run trajectory ensembles; numeric cycle "
            "evolution does not apply");
      }
      for (double v : s.grid) {
        if (!(v >= 0.0)) {
          errs.push_back("sweep.grid: lambda values must be >= 0");
          break;
        }
      }
      validate_trajectory_params(cfg, errs);
    } else {
      for (double v : s.grid) {
        EngineConfig probe = cfg.engine;
        if (s.variable == "n_bar") probe.n_bar = v;
        if (s.variable == "delta_1") probe.delta_1 = v;
        if (s.variable == "delta_2") probe.delta_2 = v;
        std::vector<std::string> point_errs;
        append_engine_errors(probe, point_errs);
        for (const std::string& msg : point_errs) {
          std::ostringstream os;
          os << "sweep " << s.variable << " = " << v << ": " << msg;
          errs.push_back(os.str());
        }
      }
      if (s.numeric) {
        if (cfg.engine.field_prep == FieldPrep::even_only) {
          errs.push_back(
              "sweep: numeric evolution rethermalizes the field, so "
              "field_prep even_only is analytic-only");
        }
        if (!(cfg.engine.kappa > 0.0) || !(cfg.engine.gamma > 0.0)) {
          errs.push_back(
              "sweep: numeric evolution needs kappa > 0 and gamma > 0");
        }
      }
    }
  }
}

}  // namespace

RunConfig load_run_config(const std::string& path,
                          const std::string& subcommand) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);

  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& ex) {
    throw ConfigError(std::string("config is not valid JSON: ") + ex.what());
  }
  if (!doc.is_object()) throw ConfigError("config root must be a JSON object");

  RunConfig cfg;
  cfg.subcommand = subcommand;
  std::vector<std::string> errs;

  check_keys(doc, "config",
             {"subcommand", "out_prefix", "engine", "spectrum", "cycle",
              "trajectories", "sweep"},
             errs);

  std::string declared;
  if (take_string(doc, "config", "subcommand", declared, errs) &&
      declared != subcommand) {
    errs.push_back("config declares subcommand \"" + declared +
                   "\" but \"" + subcommand + "\" was invoked");
  }
  if (take_string(doc, "config", "out_prefix", cfg.out_prefix, errs) &&
      cfg.out_prefix.empty()) {
    errs.push_back("out_prefix must be non-empty");
  }

  const struct {
    const char* key;
    void (*parse)(const Json&, RunConfig&, std::vector<std::string>&);
  } sections[] = {
      {"engine",
       [](const Json& o, RunConfig& c, std::vector<std::string>& e) {
         parse_engine(o, c, e);
       }},
      {"spectrum",
       [](const Json& o, RunConfig& c, std::vector<std::string>& e) {
         parse_spectrum(o, c.spectrum, e);
       }},
      {"cycle",
       [](const Json& o, RunConfig& c, std::vector<std::string>& e) {
         parse_cycle(o, c.cycle, e);
       }},
      {"trajectories",
       [](const Json& o, RunConfig& c, std::vector<std::string>& e) {
         parse_trajectories(o, c.trajectories, e);
       }},
      {"sweep",
       [](const Json& o, RunConfig& c, std::vector<std::string>& e) {
         parse_sweep(o, c.sweep, e);
       }},
  };
  for (const auto& section : sections) {
    if (auto it = doc.find(section.key); it != doc.end()) {
      if (!it->is_object()) {
        errs.push_back(std::string(section.key) + " must be a JSON object");
      } else {
        section.parse(*it, cfg, errs);
      }
    }
  }

  if (errs.empty()) validate_for_subcommand(cfg, errs);

  if (!errs.empty()) {
    std::ostringstream os;
    os << "invalid config (" << errs.size()
       << (errs.size() == 1 ? " problem):" : " problems):");
    for (const std::string& msg : errs) os << "\n  - " << msg;
    throw ConfigError(os.str());
  }

  cfg.raw_document = doc.dump(2);
  return cfg;
}

}  // namespace polariton
