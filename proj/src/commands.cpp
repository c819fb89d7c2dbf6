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

#include "polariton/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "polariton/jaynes_cummings.hpp"
#include "polariton/otto_engine.hpp"
#include "polariton/quantum_core.hpp"
#include "polariton/run_config.hpp"

namespace polariton {

namespace {

using Json = nlohmann::ordered_json;
using OutputList = std::vector<std::pair<std::string, std::string>>;

// 12 significant digits, enough to round-trip the physics while keeping
// reruns byte-identical.
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::string(buf);
}

const char* scheme_name(MeasurementKind kind) {
  switch (kind) {
    case MeasurementKind::none:
      return "none";
    case MeasurementKind::dispersive:
      return "dispersive";
    case MeasurementKind::absorptive:
      return "absorptive";
  }
  return "none";
}

// Writes via a temp file and rename so readers never observe a partial file.
void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

Json make_summary_base(const RunConfig& cfg) {
  Json s;
  s["subcommand"] = cfg.subcommand;
  s["out_prefix"] = cfg.out_prefix;
  s["config"] = Json::parse(cfg.raw_document);

  const EngineConfig& e = cfg.engine;
  Json eng;
  eng["delta_1"] = e.delta_1;
  eng["delta_2"] = e.delta_2;
  eng["omega_1"] = e.omega_1();
  eng["omega_2"] = e.omega_2();
  eng["g"] = e.g;
  eng["kappa"] = e.kappa;
  eng["gamma"] = e.gamma;
  eng["n_bar"] = e.n_bar;
  eng["tau"] = Json::array({e.tau[0], e.tau[1], e.tau[2], e.tau[3]});
  if (e.fock_cutoff < 0) {
    eng["fock_cutoff"] = "auto";
  } else {
    eng["fock_cutoff"] = e.fock_cutoff;
  }
  eng["field_prep"] =
      e.field_prep == FieldPrep::thermal ? "thermal" : "even_only";
  s["resolved"]["engine"] = eng;
  if (cfg.thermal.from_temperature) {
    Json th;
    th["omega_l_hz"] = cfg.thermal.omega_l_hz;
    th["t_f_kelvin"] = cfg.thermal.t_kelvin;
    th["n_bar"] = e.n_bar;
    s["resolved"]["thermal"] = th;
  }
  return s;
}

Json cycle_to_json(const CycleResult& r) {
  Json j;
  j["source"] = r.source;
  j["w_out"] = r.w_out;
  j["w_in"] = r.w_in;
  j["w_tot"] = r.w_tot;
  j["h_a"] = r.h_a;
  j["h_b"] = r.h_b;
  j["h_c"] = r.h_c;
  j["h_d"] = r.h_d;
  j["p_n"] = r.p_n;
  if (r.source == "numeric") {
    j["boundary_mismatch"] = r.boundary_mismatch;
    j["max_trace_drift"] = r.max_trace_drift;
  }
  return j;
}

void cmd_spectrum(const RunConfig& cfg, Json& summary, OutputList& outputs) {
  const SpectrumSection& s = cfg.spectrum;
  const double g = cfg.engine.g;
  const HilbertSpace space1{1, s.include_n1 ? 2 : 1};
  const HilbertSpace space2{2, 1};

  std::ostringstream csv;
  csv << "delta,e_2_0,e_1_0";
  if (s.include_n1) csv << ",e_2_1,e_1_1";
  if (s.two_qubit) csv << ",e_2q_minus,e_2q_plus";
  csv << ",bare_e_0,bare_g_1\n";

  double min_gap = std::numeric_limits<double>::infinity();
  double min_gap_delta = 0.0;
  double min_gap_2q = std::numeric_limits<double>::infinity();
  double min_gap_2q_delta = 0.0;

  for (int i = 0; i < s.points; ++i) {
    const double delta =
        s.points == 1
            ? s.delta_min
            : s.delta_min + (s.delta_max - s.delta_min) * i / (s.points - 1);
    const JCParams params{1.0 + delta, g, 1};
    const DressedPair d0 = dressed_levels(params, 0, space1);
    csv << fmt(delta) << ',' << fmt(d0.branch2.energy) << ','
        << fmt(d0.branch1.energy);
    const double gap = d0.branch1.energy - d0.branch2.energy;
    if (gap < min_gap) {
      min_gap = gap;
      min_gap_delta = delta;
    }
    if (s.include_n1) {
      const DressedPair d1 = dressed_levels(params, 1, space1);
      csv << ',' << fmt(d1.branch2.energy) << ',' << fmt(d1.branch1.energy);
    }
    if (s.two_qubit) {
      const JCParams params2{1.0 + delta, g, 2};
      const TwoQubitDressed tq = two_qubit_dressed(params2, space2);
      csv << ',' << fmt(tq.energy_minus) << ',' << fmt(tq.energy_plus);
      const double gap2 = tq.energy_plus - tq.energy_minus;
      if (gap2 < min_gap_2q) {
        min_gap_2q = gap2;
        min_gap_2q_delta = delta;
      }
    }
    csv << ',' << fmt(1.0 + delta) << ',' << fmt(1.0) << '\n';
  }

  Json res;
  res["points"] = s.points;
  res["min_gap_n0"] = min_gap;
  res["min_gap_n0_delta"] = min_gap_delta;
  res["expected_gap_n0"] = avoided_crossing_gap(1, g);
  if (s.two_qubit) {
    res["min_gap_two_qubit"] = min_gap_2q;
    res["min_gap_two_qubit_delta"] = min_gap_2q_delta;
    res["expected_gap_two_qubit"] = avoided_crossing_gap(2, g);
  }
  summary["results"] = res;
  outputs.emplace_back(cfg.out_prefix + "_spectrum.csv", csv.str());
}

void cmd_cycle(const RunConfig& cfg, Json& summary, OutputList& outputs) {
  const CycleResult single = analytic_work_single(cfg.engine);
  const CycleResult multi = analytic_work_multi(cfg.engine);
  const CycleResult two_qubit = analytic_work_two_qubit(cfg.engine);

  Json doc;
  doc["analytic_single"] = cycle_to_json(single);
  doc["analytic_multi"] = cycle_to_json(multi);
  doc["analytic_two_qubit"] = cycle_to_json(two_qubit);
  if (cfg.cycle.numeric) {
    const CycleResult numeric = simulate_cycle(cfg.engine, cfg.cycle.dt);
    doc["numeric"] = cycle_to_json(numeric);
  } else {
    doc["numeric"] = nullptr;
  }
  doc["hierarchy_warnings"] = multi.warnings;
  doc["fock_cutoff_used"] = resolve_fock_cutoff(cfg.engine);

  summary["results"] = doc;
  outputs.emplace_back(cfg.out_prefix + "_cycle.json", doc.dump(2) + "\n");
}

// One trajectory ensemble per lambda, all from the same master seed so the
// ensembles are coupled (same initial states and noise, different coupling).
void cmd_trajectories(const RunConfig& cfg, int threads, Json& summary,
                      OutputList& outputs) {
  const TrajectoriesSection& t = cfg.trajectories;
  const bool multi = t.lambdas.size() > 1;
  const double p1_default =
      cfg.engine.n_bar / ((cfg.engine.n_bar + 1.0) * (cfg.engine.n_bar + 1.0));

  Json runs = Json::array();
  for (std::size_t k = 0; k < t.lambdas.size(); ++k) {
    const MeasurementScheme scheme{t.scheme, t.lambdas[k]};
    const WorkDistribution wd =
        work_distribution(cfg.engine, scheme, t.n_traj, t.bin_width, t.seed,
                          t.p1, t.dt, threads);

    const std::string suffix = multi ? "_" + std::to_string(k) : "";

    std::ostringstream pops;
    pops << "time,pop_branch2,pop_branch1,pop_e0,pop_g1\n";
    for (std::size_t i = 0; i < wd.times.size(); ++i) {
      pops << fmt(wd.times[i]) << ',' << fmt(wd.mean_pop_branch2[i]) << ','
           << fmt(wd.mean_pop_branch1[i]) << ',' << fmt(wd.mean_pop_e0[i])
           << ',' << fmt(wd.mean_pop_g1[i]) << '\n';
    }

    std::ostringstream hist;
    hist << "bin_left,bin_right,count,probability\n";
    for (std::size_t b = 0; b + 1 < wd.bin_edges.size(); ++b) {
      hist << fmt(wd.bin_edges[b]) << ',' << fmt(wd.bin_edges[b + 1]) << ','
           << wd.counts[b] << ','
           << fmt(static_cast<double>(wd.counts[b]) / wd.n_trajectories)
           << '\n';
    }

    const std::string pop_path =
        cfg.out_prefix + "_populations" + suffix + ".csv";
    const std::string hist_path =
        cfg.out_prefix + "_pw" + suffix + ".csv";
    outputs.emplace_back(pop_path, pops.str());
    outputs.emplace_back(hist_path, hist.str());

    Json run;
    run["lambda"] = wd.lambda;
    run["scheme"] = scheme_name(wd.kind);
    run["mean_work"] = wd.mean;
    run["variance"] = wd.variance;
    run["std_error"] =
        std::sqrt(wd.variance / std::max(1, wd.n_trajectories));
    run["total_jumps"] = wd.total_jumps;
    run["populations_csv"] = pop_path;
    run["pw_csv"] = hist_path;
    runs.push_back(run);
  }

  Json res;
  res["seed"] = t.seed;
  res["n_trajectories"] = t.n_traj;
  res["bin_width"] = t.bin_width;
  res["dt"] = t.dt > 0.0 ? t.dt : 0.01;
  res["p1"] = t.p1 >= 0.0 ? t.p1 : p1_default;
  res["runs"] = runs;
  summary["results"] = res;
}

void cmd_sweep(const RunConfig& cfg, int threads, Json& summary,
               OutputList& outputs) {
  const SweepSection& s = cfg.sweep;
  std::ostringstream csv;
  Json rows = Json::array();

  if (s.variable == "lambda") {
    const TrajectoriesSection& t = cfg.trajectories;
    csv << "lambda,mean_work,variance,std_error,total_jumps\n";
    for (double lam : s.grid) {
      const MeasurementScheme scheme{t.scheme, lam};
      const WorkDistribution wd =
          work_distribution(cfg.engine, scheme, t.n_traj, t.bin_width, t.seed,
                            t.p1, t.dt, threads);
      const double se =
          std::sqrt(wd.variance / std::max(1, wd.n_trajectories));
      csv << fmt(lam) << ',' << fmt(wd.mean) << ',' << fmt(wd.variance) << ','
          << fmt(se) << ',' << wd.total_jumps << '\n';
      Json row;
      row["lambda"] = lam;
      row["mean_work"] = wd.mean;
      row["variance"] = wd.variance;
      row["std_error"] = se;
      row["total_jumps"] = wd.total_jumps;
      rows.push_back(row);
    }
  } else {
    csv << s.variable
        << ",w_out,w_in,w_tot,w_tot_single,w_tot_two_qubit";
    if (s.numeric) csv << ",w_tot_numeric,boundary_mismatch";
    csv << '\n';
    for (double v : s.grid) {
      EngineConfig point = cfg.engine;
      if (s.variable == "n_bar") point.n_bar = v;
      if (s.variable == "delta_1") point.delta_1 = v;
      if (s.variable == "delta_2") point.delta_2 = v;
      const CycleResult multi = analytic_work_multi(point);
      const CycleResult single = analytic_work_single(point);
      const CycleResult two_qubit = analytic_work_two_qubit(point);
      csv << fmt(v) << ',' << fmt(multi.w_out) << ',' << fmt(multi.w_in)
          << ',' << fmt(multi.w_tot) << ',' << fmt(single.w_tot) << ','
          << fmt(two_qubit.w_tot);
      Json row;
      row[s.variable] = v;
      row["w_out"] = multi.w_out;
      row["w_in"] = multi.w_in;
      row["w_tot"] = multi.w_tot;
      row["w_tot_single"] = single.w_tot;
      row["w_tot_two_qubit"] = two_qubit.w_tot;
      row["hierarchy_warnings"] = multi.warnings;
      if (s.numeric) {
        const CycleResult numeric = simulate_cycle(point, s.dt);
        csv << ',' << fmt(numeric.w_tot) << ','
            << fmt(numeric.boundary_mismatch);
        row["w_tot_numeric"] = numeric.w_tot;
        row["boundary_mismatch"] = numeric.boundary_mismatch;
      }
      csv << '\n';
      rows.push_back(row);
    }
  }

  Json res;
  res["variable"] = s.variable;
  res["grid"] = s.grid;
  res["rows"] = rows;
  summary["results"] = res;
  outputs.emplace_back(cfg.out_prefix + "_sweep.csv", csv.str());
}

}  // namespace

int run_command(const CommandOptions& options) {
  RunConfig cfg = load_run_config(options.config_path, options.subcommand);
  if (!options.out_prefix.empty()) cfg.out_prefix = options.out_prefix;
  if (options.has_seed) cfg.trajectories.seed = options.seed;
  const int threads = std::max(1, options.threads);

  Json summary = make_summary_base(cfg);
  OutputList outputs;

  if (cfg.subcommand == "spectrum") {
    cmd_spectrum(cfg, summary, outputs);
  } else if (cfg.subcommand == "cycle") {
    cmd_cycle(cfg, summary, outputs);
  } else if (cfg.subcommand == "trajectories") {
    cmd_trajectories(cfg, threads, summary, outputs);
  } else if (cfg.subcommand == "sweep") {
    cmd_sweep(cfg, threads, summary, outputs);
  } else {
    throw ConfigError("unknown subcommand: " + cfg.subcommand);
  }

  const std::string summary_path = cfg.out_prefix + "_summary.json";
  Json paths = Json::array();
  for (const auto& [path, content] : outputs) paths.push_back(path);
  paths.push_back(summary_path);
  summary["outputs"] = paths;
  outputs.emplace_back(summary_path, summary.dump(2) + "\n");

  // All results exist before the first byte is written.
  for (const auto& [path, content] : outputs) write_file_atomic(path, content);
  for (const auto& [path, content] : outputs) {
    std::cout << "wrote " << path << '\n';
  }
  return 0;
}

}  // namespace polariton
