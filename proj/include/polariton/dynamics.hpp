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

#ifndef POLARITON_DYNAMICS_HPP
#define POLARITON_DYNAMICS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "polariton/jaynes_cummings.hpp"
#include "polariton/quantum_core.hpp"

namespace polariton {

// Cavity damping kappa against a thermal field occupation n_bar, plus
// zero-temperature qubit decay gamma.  Rates in units of omega_L.
struct BathParams {
  double kappa = 0.0;
  double gamma = 0.0;
  double n_bar = 0.0;
};

// Linear frequency ramp omega(t) = omega_start + (omega_end - omega_start)
// t / duration.  Equal endpoints describe a hold.
struct RampSchedule {
  double omega_start = 1.0;
  double omega_end = 1.0;
  double duration = 1.0;

  double omega_at(double t) const {
    return omega_start + (omega_end - omega_start) * (t / duration);
  }
  bool is_ramp() const { return omega_start != omega_end; }
  static RampSchedule hold(double omega, double duration) {
    return RampSchedule{omega, omega, duration};
  }
};

enum class MeasurementKind { none, dispersive, absorptive };

struct MeasurementScheme {
  MeasurementKind kind = MeasurementKind::none;
  double lambda = 0.0;  // measurement rate, units of omega_L
};

// One stochastic run.  Scalar series are sampled on `times` (decimated to
// roughly 2000 points); the dressed populations refer to the instantaneous
// doublet at omega(t).
struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<double> sigma_z;
  std::vector<double> pop_branch2;
  std::vector<double> pop_branch1;
  std::vector<double> pop_e0;
  std::vector<double> pop_g1;
  std::vector<double> jump_times;
  double work = 0.0;
  std::uint64_t seed_index = 0;
};

// Deterministic master-equation run.  States are lab-frame density matrices
// on the same decimated grid; the last sample is the final state.
struct MasterRun {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  DensityMatrix final_state;
  double work = 0.0;
  double max_trace_drift = 0.0;
};

// Reproducible per-trajectory random stream.  Stream k is a pure function of
// (master_seed, k): an mt19937_64 keyed through std::seed_seq, uniforms from
// the top 53 bits, Gaussians via Box-Muller.  Results do not depend on which
// thread consumes the stream.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t k);

  double uniform();   // (0, 1]
  double gaussian();  // standard normal
  std::uint64_t index() const { return index_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t index_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

std::vector<RngStream> make_rng_streams(std::uint64_t master_seed, int count);

// Right-hand side of the master equation
//   drho/dt = -i[H, rho] + gamma L[sigma-] + kappa(n_bar+1) L[a]
//             + kappa n_bar L[a^dag],  L[x]rho = x rho x^dag - 1/2 {x^dag x, rho}.
// For several qubits every qubit gets its own decay channel.  Reference
// (dense) formula; evolve_master integrates the same generator through a
// cached sparse superoperator.
Operator lindblad_rhs(const DensityMatrix& rho, const Operator& h, const BathParams& bath,
                      const HilbertSpace& space);

// Fixed-step RK4 integration of the master equation over `schedule`, with
// rho(i,j) symmetrized each step.  Integration happens in the frame rotating
// at the field frequency, so the step bound scales with the detuning, not the
// absolute frequencies: requires dt <= 0.05 / r with
//   r = n_qubits * max|omega - 1| + g sqrt(dim) + kappa (n_bar + 1) + gamma.
// Aborts if |Tr rho - 1| exceeds 1e-8 or the state stops being finite.
// `work` accumulates Tr[rho dH] across the ramp (midpoint rule).
MasterRun evolve_master(const DensityMatrix& rho0, const JCParams& params,
                        const HilbertSpace& space, const RampSchedule& schedule,
                        const BathParams& bath, double dt);

// Euler-Maruyama integration of the diffusive record of a continuous
// dispersive sigma_z measurement,
//   d|psi> = [-iH - lambda (sigma_z - <sigma_z>)^2] |psi> dt
//            + sqrt(2 lambda) (sigma_z - <sigma_z>) |psi> dw,
// renormalizing after every step.  Single qubit only.  Requires
// dt * lambda < 0.01 and dt * g < 0.05; a norm below 1e-6 before
// renormalization aborts.  lambda = 0 reduces to Schrodinger evolution.
TrajectoryRecord evolve_sse_dispersive(const PureState& psi0, const JCParams& params,
                                       const HilbertSpace& space, const RampSchedule& schedule,
                                       const MeasurementScheme& m, double dt, RngStream& rng);

// First-order jump unraveling of an absorptive (photodetection-like) monitor
// on the qubit: no-jump drift
//   d|psi> = [-iH + (lambda/2)(<sigma+ sigma-> - sigma+ sigma-)] |psi> dt,
// and a collapse psi -> sigma- psi / |sigma- psi| drawn per step with
// probability lambda <sigma+ sigma-> dt.  A jump attempt with
// <sigma+ sigma-> < 1e-12 is suppressed.  Preconditions as dispersive.
TrajectoryRecord evolve_sse_jump(const PureState& psi0, const JCParams& params,
                                 const HilbertSpace& space, const RampSchedule& schedule,
                                 const MeasurementScheme& m, double dt, RngStream& rng);

// Work increment (hbar = 1) of a qubit frequency change d_omega at fixed
// <sigma_z>: dW = 1/2 (<sigma_z> + 1) d_omega.  Rejects |<sigma_z>| > 1 + 1e-8.
double work_increment(double sigma_z, double d_omega);

}  // namespace polariton

#endif  // POLARITON_DYNAMICS_HPP
