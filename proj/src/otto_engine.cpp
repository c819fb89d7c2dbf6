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

#include "polariton/otto_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

namespace polariton {
namespace {

constexpr double kHierarchyFactor = 3.0;
constexpr double kAutoTailMass = 1e-8;
constexpr int kAutoCutoffFloor = 3;
constexpr int kTrajectoryBlock = 64;

void append_all(std::string& msg, const std::string& part) {
  if (!msg.empty()) msg += "; ";
  msg += part;
}

double mean_photon_number(FieldPrep kind, double n_bar) {
  if (kind == FieldPrep::thermal) return n_bar;
  // Even-photon renormalized thermal state: q_{2k} = (1 - r^2) r^{2k} with
  // r = n_bar / (n_bar + 1), so <n> = 2 r^2 / (1 - r^2).
  const double r = n_bar / (n_bar + 1.0);
  const double x = r * r;
  return 2.0 * x / (1.0 - x);
}

// Shared scaffolding of the analytic cycle summaries.
CycleResult analytic_skeleton(const EngineConfig& config) {
  validate(config);
  CycleResult result;
  result.source = "analytic";
  result.warnings = hierarchy_warnings(config);
  result.p_n = prepare_field_state(config.field_prep, config.n_bar, resolve_fock_cutoff(config));
  return result;
}

// Work of one populated lower-branch excitation carried from omega_2 to
// omega_1, for a branch energy function e(delta).  For delta_2 <= |delta_1|
// the magnitude never exceeds |delta_1| because sqrt(d^2 + c) + d increases
// in d; above that the dressed correction may poke out, so nothing is
// enforced there.
void check_single_excitation_bound(double per_excitation, const EngineConfig& config,
                                   const char* name) {
  if (config.delta_2 <= std::abs(config.delta_1) * (1.0 + 1e-12) &&
      !(std::abs(per_excitation) <= std::abs(config.delta_1) * (1.0 + 1e-12))) {
    throw std::logic_error(std::string(name) + ": single-excitation work exceeded |delta_1|");
  }
}

double lab_energy(const DensityMatrix& rho, double omega, const EngineConfig& config,
                  const HilbertSpace& space) {
  const Operator h = jc_hamiltonian(JCParams{omega, config.g, 1}, space);
  return (rho * h).trace().real();
}

std::vector<double> field_marginal(const DensityMatrix& rho, const HilbertSpace& space) {
  std::vector<double> p(space.fock_cutoff + 1, 0.0);
  for (int i = 0; i < space.dim(); ++i) p[space.fock_of(i)] += rho(i, i).real();
  return p;
}

}  // namespace

void validate(const EngineConfig& config) {
  std::string msg;
  const bool finite = std::isfinite(config.delta_1) && std::isfinite(config.delta_2) &&
                      std::isfinite(config.g) && std::isfinite(config.kappa) &&
                      std::isfinite(config.gamma) && std::isfinite(config.n_bar) &&
                      std::isfinite(config.tau[0]) && std::isfinite(config.tau[1]) &&
                      std::isfinite(config.tau[2]) && std::isfinite(config.tau[3]);
  if (!finite) append_all(msg, "all parameters must be finite");
  if (!(config.delta_1 < 0.0 && config.delta_2 > 0.0)) {
    append_all(msg,
               "delta_1 < 0 < delta_2 required (the reversed ordering describes a heat pump, "
               "which needs a hot qubit reservoir absent from this bath model)");
  }
  if (!(config.delta_1 > -1.0)) append_all(msg, "delta_1 > -1 required so omega_1 stays positive");
  if (!(config.g > 0.0)) append_all(msg, "g > 0 required");
  if (!(config.kappa >= 0.0)) append_all(msg, "kappa >= 0 required");
  if (!(config.gamma >= 0.0)) append_all(msg, "gamma >= 0 required");
  if (!(config.n_bar >= 0.0)) append_all(msg, "n_bar >= 0 required");
  for (int i = 0; i < 4; ++i) {
    if (!(config.tau[i] > 0.0)) {
      append_all(msg, "tau[" + std::to_string(i) + "] > 0 required");
    }
  }
  if (config.fock_cutoff != -1 && config.fock_cutoff < 1) {
    append_all(msg, "fock_cutoff must be >= 1 or -1 for automatic");
  }
  if (!msg.empty()) throw std::invalid_argument("EngineConfig: " + msg);
}

std::vector<std::string> hierarchy_warnings(const EngineConfig& config) {
  std::vector<std::string> warnings;
  const double f = kHierarchyFactor;
  const double d_max = std::max(std::abs(config.delta_1), config.delta_2);
  const double d_min = std::min(std::abs(config.delta_1), config.delta_2);
  const double omega_min = std::min(config.omega_1(), config.omega_2());

  if (std::min(omega_min, 1.0) < f * d_max) {
    warnings.push_back("frequencies not large against the detunings (want omega, 1 >> |delta|)");
  }
  if (d_min < f * config.g) {
    warnings.push_back("detunings not large against the coupling (want |delta| >> g)");
  }
  if (config.g * config.tau[2] < f) {
    warnings.push_back("work ramp not slow against the coupling (want tau_3 >> 1/g)");
  }
  if (config.gamma <= 0.0) {
    warnings.push_back("gamma = 0: the cold stroke cannot reset the qubit");
  } else {
    if (f * config.gamma * config.tau[2] > 1.0) {
      warnings.push_back("qubit decay not slow against the work ramp (want 1/gamma >> tau_3)");
    }
    if (config.gamma * config.tau[3] < f) {
      warnings.push_back("cold stroke too short to relax the qubit (want tau_4 >> 1/gamma)");
    }
  }
  if (config.kappa <= 0.0) {
    warnings.push_back("kappa = 0: the hot stroke cannot thermalize the field");
  } else {
    if (f * config.kappa * config.tau[3] > 1.0) {
      warnings.push_back("field heating not slow against the cold stroke (want 1/kappa >> tau_4)");
    }
    if (config.kappa * config.tau[1] < f) {
      warnings.push_back("hot stroke too short to thermalize the field (want tau_2 >> 1/kappa)");
    }
  }
  return warnings;
}

int resolve_fock_cutoff(const EngineConfig& config) {
  if (config.fock_cutoff != -1) return config.fock_cutoff;
  int n = kAutoCutoffFloor;
  while (thermal_tail_mass(config.n_bar, n) >= kAutoTailMass && n < 4096) ++n;
  return n;
}

double thermal_photon_number(double omega_l_hz, double t_kelvin) {
  if (!(omega_l_hz > 0.0)) throw std::invalid_argument("thermal_photon_number: frequency > 0 required");
  if (!(t_kelvin >= 0.0)) throw std::invalid_argument("thermal_photon_number: temperature >= 0 required");
  if (t_kelvin == 0.0) return 0.0;
  const double two_pi = 6.283185307179586476925286766559;
  const double x = kHbar * two_pi * omega_l_hz / (kBoltzmann * t_kelvin);
  return 1.0 / std::expm1(x);
}

std::vector<double> thermal_distribution(double n_bar, int n_max) {
  if (!(n_bar >= 0.0)) throw std::invalid_argument("thermal_distribution: n_bar >= 0 required");
  if (n_max < 0) throw std::invalid_argument("thermal_distribution: n_max >= 0 required");
  const double r = n_bar / (n_bar + 1.0);
  std::vector<double> p(n_max + 1);
  double term = 1.0 / (n_bar + 1.0);
  for (int n = 0; n <= n_max; ++n) {
    p[n] = term;
    term *= r;
  }
  return p;
}

double thermal_tail_mass(double n_bar, int n_max) {
  if (!(n_bar >= 0.0)) throw std::invalid_argument("thermal_tail_mass: n_bar >= 0 required");
  if (n_max < 0) throw std::invalid_argument("thermal_tail_mass: n_max >= 0 required");
  return std::pow(n_bar / (n_bar + 1.0), n_max + 1);
}

std::vector<double> prepare_field_state(FieldPrep kind, double n_bar, int n_max) {
  std::vector<double> p = thermal_distribution(n_bar, n_max);
  if (kind == FieldPrep::thermal) return p;
  // Even-only: drop odd weights and renormalize against the full (untruncated)
  // even mass (n_bar + 1)^{-1} / (1 - r^2), so entries are exact point values.
  const double r = n_bar / (n_bar + 1.0);
  const double even_mass = 1.0 / ((n_bar + 1.0) * (1.0 - r * r));
  for (int n = 0; n <= n_max; ++n) {
    p[n] = (n % 2 == 0) ? p[n] / even_mass : 0.0;
  }
  return p;
}

CycleResult analytic_work_single(const EngineConfig& config) {
  CycleResult result = analytic_skeleton(config);
  const double p1 = result.p_n.size() > 1 ? result.p_n[1] : 0.0;
  const auto e20 = [&](double delta) {
    return (1.0 + delta) - 0.5 * (rabi_frequency(delta, config.g, 0) + delta);
  };
  const double per_excitation = e20(config.delta_1) - e20(config.delta_2);
  check_single_excitation_bound(per_excitation, config, "analytic_work_single");
  result.w_out = p1 * per_excitation;
  result.w_in = 0.0;
  result.w_tot = result.w_out;
  result.h_a = p1 * e20(config.delta_2);
  result.h_b = p1 * e20(config.delta_1);
  result.h_c = 0.0;
  result.h_d = 0.0;
  return result;
}

CycleResult analytic_work_multi(const EngineConfig& config) {
  CycleResult result = analytic_skeleton(config);
  const double p0 = result.p_n[0];
  const double p1 = result.p_n.size() > 1 ? result.p_n[1] : 0.0;
  const double mean_n = mean_photon_number(config.field_prep, config.n_bar);

  result.w_out = config.delta_1 * (1.0 - p0);
  result.w_in = config.delta_2 * (1.0 - p0 - p1);
  result.w_tot = result.w_out + result.w_in;
  result.h_a = mean_n;
  result.h_b = mean_n + config.delta_1 * (1.0 - p0);
  result.h_c = mean_n - (1.0 - p0);
  result.h_d = result.h_c + config.delta_2 * (1.0 - p0 - p1);
  return result;
}

CycleResult analytic_work_two_qubit(const EngineConfig& config) {
  CycleResult result = analytic_skeleton(config);
  const double p1 = result.p_n.size() > 1 ? result.p_n[1] : 0.0;
  const auto e_minus = [&](double delta) {
    return 0.5 * ((2.0 + delta) - std::sqrt(delta * delta + 8.0 * config.g * config.g));
  };
  const double per_excitation = e_minus(config.delta_1) - e_minus(config.delta_2);
  check_single_excitation_bound(per_excitation, config, "analytic_work_two_qubit");
  result.w_out = p1 * per_excitation;
  result.w_in = 0.0;
  result.w_tot = result.w_out;
  result.h_a = p1 * e_minus(config.delta_2);
  result.h_b = p1 * e_minus(config.delta_1);
  result.h_c = 0.0;
  result.h_d = 0.0;
  return result;
}

CycleResult simulate_cycle(const EngineConfig& config, double dt) {
  validate(config);
  if (!(config.kappa > 0.0) || !(config.gamma > 0.0)) {
    throw std::invalid_argument("simulate_cycle: kappa > 0 and gamma > 0 required (both "
                                "thermalization strokes need their bath)");
  }
  if (config.field_prep != FieldPrep::thermal) {
    throw std::invalid_argument("simulate_cycle: the field preparation option only enters the "
                                "analytic multi-photon accounting; the numeric cycle always "
                                "thermalizes against the hot bath");
  }

  const int cutoff = resolve_fock_cutoff(config);
  const HilbertSpace space{1, cutoff};
  const int d = space.dim();
  const JCParams params{1.0, config.g, 1};
  const BathParams baths{config.kappa, config.gamma, config.n_bar};
  const BathParams closed{0.0, 0.0, 0.0};
  const double omega_1 = config.omega_1();
  const double omega_2 = config.omega_2();

  const double rate_scale = std::max(std::abs(config.delta_1), config.delta_2) +
                            config.g * std::sqrt(static_cast<double>(d)) +
                            config.kappa * (config.n_bar + 1.0) + config.gamma;
  if (dt <= 0.0) dt = 0.98 * 0.05 / rate_scale;

  CycleResult result;
  result.source = "numeric";
  result.warnings = hierarchy_warnings(config);

  DensityMatrix rho = DensityMatrix::Zero(d, d);
  rho(space.index(0, 0), space.index(0, 0)) = 1.0;

  const auto track = [&](const MasterRun& run) {
    result.max_trace_drift = std::max(result.max_trace_drift, run.max_trace_drift);
    return run.final_state;
  };

  // Lead-in: stroke 1 from the cold start and the hot hold, reaching point A.
  rho = track(evolve_master(rho, params, space,
                            RampSchedule{omega_1, omega_2, config.tau[0]}, closed, dt));
  rho = track(evolve_master(rho, params, space, RampSchedule::hold(omega_2, config.tau[1]),
                            baths, dt));
  result.h_a = lab_energy(rho, omega_2, config, space);
  result.p_n = field_marginal(rho, space);

  // Measured loop: expansion ramp, cold hold, compression ramp.
  const MasterRun expansion = evolve_master(
      rho, params, space, RampSchedule{omega_2, omega_1, config.tau[2]}, closed, dt);
  rho = track(expansion);
  result.w_out = expansion.work;
  result.h_b = lab_energy(rho, omega_1, config, space);

  rho = track(evolve_master(rho, params, space, RampSchedule::hold(omega_1, config.tau[3]),
                            baths, dt));
  result.h_c = lab_energy(rho, omega_1, config, space);

  const MasterRun compression = evolve_master(
      rho, params, space, RampSchedule{omega_1, omega_2, config.tau[0]}, closed, dt);
  rho = track(compression);
  result.w_in = compression.work;
  result.h_d = lab_energy(rho, omega_2, config, space);

  result.w_tot = result.w_out + result.w_in;
  result.boundary_mismatch = std::max(std::abs(result.w_out - (result.h_b - result.h_a)),
                                      std::abs(result.w_in - (result.h_d - result.h_c)));
  return result;
}

WorkDistribution work_distribution(const EngineConfig& config, const MeasurementScheme& scheme,
                                   int n_traj, double bin_width, std::uint64_t master_seed,
                                   double p1_override, double dt, int threads) {
  validate(config);
  if (config.field_prep != FieldPrep::thermal) {
    throw std::invalid_argument("work_distribution: the single-excitation initial mixture is "
                                "thermal; even_only applies to the analytic accounting only");
  }
  if (n_traj < 1) throw std::invalid_argument("work_distribution: n_traj >= 1 required");
  if (!(bin_width > 0.0)) throw std::invalid_argument("work_distribution: bin_width > 0 required");
  if (threads < 1) throw std::invalid_argument("work_distribution: threads >= 1 required");
  if (!(scheme.lambda >= 0.0)) throw std::invalid_argument("work_distribution: lambda >= 0 required");
  if (scheme.kind == MeasurementKind::none && scheme.lambda != 0.0) {
    throw std::invalid_argument("work_distribution: lambda > 0 needs a measurement kind");
  }
  double p1 = p1_override;
  if (p1 < 0.0) p1 = config.n_bar / ((config.n_bar + 1.0) * (config.n_bar + 1.0));
  if (p1 > 1.0) throw std::invalid_argument("work_distribution: p1 must not exceed 1");

  // The initial mixture only occupies the zero- and one-excitation sectors and
  // the measured stroke never raises the excitation number, so the floor
  // cutoff is already exact; an explicit config cutoff still wins.
  const int cutoff = config.fock_cutoff != -1 ? config.fock_cutoff : kAutoCutoffFloor;
  const HilbertSpace space{1, cutoff};
  const JCParams params{config.omega_2(), config.g, 1};
  const RampSchedule schedule{config.omega_2(), config.omega_1(), config.tau[2]};
  if (dt <= 0.0) dt = 0.01;

  PureState ground = PureState::Zero(space.dim());
  ground(space.index(0, 0)) = 1.0;
  const PureState excited = dressed_levels(params, 0, space).branch2.state;

  struct BlockSums {
    std::vector<double> sigma_z, p2, p1v, pe0, pg1;
    long jumps = 0;
  };
  const int n_blocks = (n_traj + kTrajectoryBlock - 1) / kTrajectoryBlock;
  std::vector<BlockSums> blocks(n_blocks);
  std::vector<double> works(n_traj);
  std::vector<double> times;

  std::atomic<int> next_block{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto run_block = [&](int b) {
    BlockSums& sums = blocks[b];
    const int k_begin = b * kTrajectoryBlock;
    const int k_end = std::min(n_traj, k_begin + kTrajectoryBlock);
    for (int k = k_begin; k < k_end; ++k) {
      RngStream stream(master_seed, static_cast<std::uint64_t>(k));
      const bool start_excited = stream.uniform() <= p1;
      const PureState& psi0 = start_excited ? excited : ground;
      const TrajectoryRecord rec =
          scheme.kind == MeasurementKind::absorptive
              ? evolve_sse_jump(psi0, params, space, schedule, scheme, dt, stream)
              : evolve_sse_dispersive(psi0, params, space, schedule, scheme, dt, stream);
      works[k] = rec.work;
      if (k == 0) times = rec.times;
      if (sums.sigma_z.empty()) {
        const std::size_t n = rec.times.size();
        sums.sigma_z.assign(n, 0.0);
        sums.p2.assign(n, 0.0);
        sums.p1v.assign(n, 0.0);
        sums.pe0.assign(n, 0.0);
        sums.pg1.assign(n, 0.0);
      }
      for (std::size_t i = 0; i < rec.times.size(); ++i) {
        sums.sigma_z[i] += rec.sigma_z[i];
        sums.p2[i] += rec.pop_branch2[i];
        sums.p1v[i] += rec.pop_branch1[i];
        sums.pe0[i] += rec.pop_e0[i];
        sums.pg1[i] += rec.pop_g1[i];
      }
      sums.jumps += static_cast<long>(rec.jump_times.size());
    }
  };
  const auto drain_blocks = [&] {
    for (;;) {
      const int b = next_block.fetch_add(1);
      if (b >= n_blocks) return;
      try {
        run_block(b);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  const int n_workers = std::min(threads, n_blocks);
  if (n_workers <= 1) {
    drain_blocks();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(drain_blocks);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  WorkDistribution dist;
  dist.n_trajectories = n_traj;
  dist.bin_width = bin_width;
  dist.lambda = scheme.lambda;
  dist.kind = scheme.kind;
  dist.works = std::move(works);
  dist.times = std::move(times);

  // Fixed-block reduction: summation order is set by the block layout, never
  // by the thread count, so reruns are bit-identical.
  const std::size_t n_samples = blocks.empty() ? 0 : blocks[0].sigma_z.size();
  dist.mean_sigma_z.assign(n_samples, 0.0);
  dist.mean_pop_branch2.assign(n_samples, 0.0);
  dist.mean_pop_branch1.assign(n_samples, 0.0);
  dist.mean_pop_e0.assign(n_samples, 0.0);
  dist.mean_pop_g1.assign(n_samples, 0.0);
  for (const BlockSums& sums : blocks) {
    if (sums.sigma_z.size() != n_samples) {
      throw std::logic_error("work_distribution: inconsistent sample grids across trajectories");
    }
    dist.total_jumps += sums.jumps;
    for (std::size_t i = 0; i < n_samples; ++i) {
      dist.mean_sigma_z[i] += sums.sigma_z[i];
      dist.mean_pop_branch2[i] += sums.p2[i];
      dist.mean_pop_branch1[i] += sums.p1v[i];
      dist.mean_pop_e0[i] += sums.pe0[i];
      dist.mean_pop_g1[i] += sums.pg1[i];
    }
  }
  for (std::size_t i = 0; i < n_samples; ++i) {
    dist.mean_sigma_z[i] /= n_traj;
    dist.mean_pop_branch2[i] /= n_traj;
    dist.mean_pop_branch1[i] /= n_traj;
    dist.mean_pop_e0[i] /= n_traj;
    dist.mean_pop_g1[i] /= n_traj;
  }

  double sum = 0.0;
  for (double w : dist.works) sum += w;
  dist.mean = sum / n_traj;
  double sq = 0.0;
  for (double w : dist.works) sq += (w - dist.mean) * (w - dist.mean);
  dist.variance = n_traj > 1 ? sq / (n_traj - 1) : 0.0;

  double w_min = dist.works[0], w_max = dist.works[0];
  for (double w : dist.works) {
    w_min = std::min(w_min, w);
    w_max = std::max(w_max, w);
  }
  const long lo = static_cast<long>(std::floor(w_min / bin_width));
  const long hi = static_cast<long>(std::floor(w_max / bin_width)) + 1;
  const long n_bins = hi - lo;
  dist.bin_edges.resize(n_bins + 1);
  for (long i = 0; i <= n_bins; ++i) dist.bin_edges[i] = static_cast<double>(lo + i) * bin_width;
  dist.counts.assign(n_bins, 0);
  for (double w : dist.works) {
    long bin = static_cast<long>(std::floor(w / bin_width)) - lo;
    if (bin < 0) bin = 0;
    if (bin >= n_bins) bin = n_bins - 1;
    ++dist.counts[bin];
  }
  return dist;
}

double transmon_frequency(double phi_over_phi0, double omega_0) {
  const double pi = 3.14159265358979323846264338328;
  return omega_0 * std::sqrt(std::abs(std::cos(pi * phi_over_phi0)));
}

}  // namespace polariton
