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

#include "polariton/dynamics.hpp"

#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polariton {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// All propagators work in the frame rotating at the field frequency:
// H_rot = H - N_exc, which removes the fast phases exp(-i n t) while leaving
// every reported observable (sigma_z, Fock and dressed populations, work)
// unchanged because [H, N_exc] = 0 and the dissipators commute with the frame
// rotation.  Samples are rotated back to the lab frame where it matters
// (density-matrix coherences between different excitation sectors).
//
// The qubit part of H_rot is additionally recentered by -delta/2 per
// excitation so the diagonal of each two-level block is symmetric about zero.
// For the renormalized Euler stochastic schemes this cancels the leading
// norm-growth imbalance between the two dressed branches (the per-step
// amplification of an eigencomponent is 1 + dt^2 E^2 / 2, so a spectrum
// symmetric about zero amplifies both branches identically); the shift itself
// is a global phase.

void check_bath(const BathParams& bath) {
  if (!(bath.kappa >= 0.0) || !(bath.gamma >= 0.0) || !(bath.n_bar >= 0.0)) {
    throw std::invalid_argument("dynamics: bath rates and n_bar must be non-negative");
  }
}

void check_schedule(const RampSchedule& schedule) {
  if (!(schedule.duration > 0.0)) {
    throw std::invalid_argument("dynamics: schedule duration must be positive");
  }
  if (!(schedule.omega_start > 0.0) || !(schedule.omega_end > 0.0)) {
    throw std::invalid_argument("dynamics: schedule frequencies must be positive");
  }
}

long step_count(double duration, double dt) {
  return std::max<long>(1, static_cast<long>(std::ceil(duration / dt - 1e-9)));
}

// vec(rho) stacks columns, index i + d*j; then vec(A X B) = (B^T kron A) vec(X).
Operator lift_commutator(const Operator& h) {
  const int d = static_cast<int>(h.rows());
  const Operator id = Operator::Identity(d, d);
  return Complex(0.0, -1.0) * (tensor(id, h) - tensor(h.transpose(), id));
}

Operator lift_dissipator(const Operator& x, double rate) {
  const int d = static_cast<int>(x.rows());
  const Operator id = Operator::Identity(d, d);
  const Operator xdx = x.adjoint() * x;
  return rate * (tensor(x.conjugate(), x) - 0.5 * tensor(id, xdx) -
                 0.5 * tensor(xdx.transpose(), id));
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t k) : index_(k) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed & 0xffffffffULL),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(k & 0xffffffffULL),
                    static_cast<std::uint32_t>(k >> 32)};
  engine_ = std::mt19937_64(seq);
}

double RngStream::uniform() {
  // Top 53 bits, shifted into (0, 1] so log(uniform()) is always finite.
  const std::uint64_t x = engine_();
  return (static_cast<double>(x >> 11) + 1.0) * 0x1.0p-53;
}

double RngStream::gaussian() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double phi = kTwoPi * uniform();
  cached_ = r * std::sin(phi);
  has_cached_ = true;
  return r * std::cos(phi);
}

std::vector<RngStream> make_rng_streams(std::uint64_t master_seed, int count) {
  if (count < 0) throw std::invalid_argument("make_rng_streams: count >= 0 required");
  std::vector<RngStream> streams;
  streams.reserve(count);
  for (int k = 0; k < count; ++k) streams.emplace_back(master_seed, static_cast<std::uint64_t>(k));
  return streams;
}

double work_increment(double sigma_z, double d_omega) {
  if (!(std::abs(sigma_z) <= 1.0 + 1e-8)) {
    throw std::invalid_argument("work_increment: |<sigma_z>| must not exceed 1");
  }
  return 0.5 * (sigma_z + 1.0) * d_omega;
}

Operator lindblad_rhs(const DensityMatrix& rho, const Operator& h, const BathParams& bath,
                      const HilbertSpace& space) {
  const int d = space.dim();
  if (rho.rows() != d || rho.cols() != d || h.rows() != d || h.cols() != d) {
    throw std::invalid_argument("lindblad_rhs: operator dimensions must match the space");
  }
  check_bath(bath);

  Operator out = Complex(0.0, -1.0) * (h * rho - rho * h);
  const auto add_channel = [&](const Operator& x, double rate) {
    if (rate <= 0.0) return;
    const Operator xdx = x.adjoint() * x;
    out += rate * (x * rho * x.adjoint() - 0.5 * (xdx * rho + rho * xdx));
  };
  const Operator a = field_annihilation(space);
  add_channel(a, bath.kappa * (bath.n_bar + 1.0));
  add_channel(a.adjoint(), bath.kappa * bath.n_bar);
  for (int q = 0; q < space.n_qubits; ++q) add_channel(qubit_ops(space, q).sm, bath.gamma);
  return out;
}

MasterRun evolve_master(const DensityMatrix& rho0, const JCParams& params,
                        const HilbertSpace& space, const RampSchedule& schedule,
                        const BathParams& bath, double dt) {
  if (params.n_qubits != space.n_qubits) {
    throw std::invalid_argument("evolve_master: params/space qubit count mismatch");
  }
  if (!(params.g >= 0.0)) throw std::invalid_argument("evolve_master: g >= 0 required");
  check_bath(bath);
  check_schedule(schedule);
  const int d = space.dim();
  if (rho0.rows() != d || rho0.cols() != d) {
    throw std::invalid_argument("evolve_master: rho0 dimension mismatch");
  }
  if (hermiticity_error(rho0) > 1e-10 * std::max(1.0, rho0.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("evolve_master: rho0 must be Hermitian");
  }
  if (std::abs(rho0.trace().real() - 1.0) > 1e-8 || std::abs(rho0.trace().imag()) > 1e-8) {
    throw std::invalid_argument("evolve_master: rho0 must have unit trace");
  }
  const double delta_max =
      std::max(std::abs(schedule.omega_start - 1.0), std::abs(schedule.omega_end - 1.0));
  const double rate_scale = space.n_qubits * delta_max +
                            params.g * std::sqrt(static_cast<double>(d)) +
                            bath.kappa * (bath.n_bar + 1.0) + bath.gamma;
  if (!(dt > 0.0) || dt * std::max(rate_scale, 1e-9) > 0.05 * (1.0 + 1e-12)) {
    throw std::invalid_argument("evolve_master: dt outside (0, 0.05 / rate scale]");
  }

  using SparseOp = Eigen::SparseMatrix<Complex>;
  using Vec = Eigen::VectorXcd;

  // Rotating-frame generator L(t) = L0 + delta(t) L1 acting on vec(rho).
  Operator splus = Operator::Zero(d, d);
  for (int q = 0; q < space.n_qubits; ++q) splus += qubit_ops(space, q).sp;
  const Operator a = field_annihilation(space);
  const Operator coupling = params.g * (a * splus + (a * splus).adjoint());

  std::vector<double> excq(d), nexc(d);
  Operator excq_op = Operator::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    excq[i] = static_cast<double>(__builtin_popcount(static_cast<unsigned>(space.qubit_of(i))));
    nexc[i] = excq[i] + space.fock_of(i);
    excq_op(i, i) = excq[i];
  }

  Operator l0_dense = lift_commutator(coupling);
  if (bath.kappa * (bath.n_bar + 1.0) > 0.0) l0_dense += lift_dissipator(a, bath.kappa * (bath.n_bar + 1.0));
  if (bath.kappa * bath.n_bar > 0.0) l0_dense += lift_dissipator(a.adjoint(), bath.kappa * bath.n_bar);
  if (bath.gamma > 0.0) {
    for (int q = 0; q < space.n_qubits; ++q) l0_dense += lift_dissipator(qubit_ops(space, q).sm, bath.gamma);
  }
  SparseOp l0 = l0_dense.sparseView();
  SparseOp l1 = lift_commutator(excq_op).sparseView();
  l0.makeCompressed();
  l1.makeCompressed();

  const long n_steps = step_count(schedule.duration, dt);
  const double dt_eff = schedule.duration / static_cast<double>(n_steps);
  const long stride = std::max<long>(1, n_steps / 2000);
  const bool ramp = schedule.is_ramp();

  SparseOp l_hold;
  if (!ramp) {
    l_hold = l0;
    const double delta = schedule.omega_start - 1.0;
    if (delta != 0.0) l_hold += SparseOp(delta * l1);
    l_hold.makeCompressed();
  }

  Vec v = Eigen::Map<const Vec>(rho0.data(), static_cast<Eigen::Index>(d) * d);
  Vec k1(d * d), k2(d * d), k3(d * d), k4(d * d), stage(d * d), l1v(d * d);

  const auto apply = [&](double tt, const Vec& x, Vec& out) {
    if (!ramp) {
      out.noalias() = l_hold * x;
    } else {
      out.noalias() = l0 * x;
      l1v.noalias() = l1 * x;
      out += (schedule.omega_at(tt) - 1.0) * l1v;
    }
  };
  const auto exc_of = [&](const Vec& vv) {
    double e = 0.0;
    for (int i = 0; i < d; ++i) e += excq[i] * vv[static_cast<Eigen::Index>(i) * (d + 1)].real();
    return e;
  };

  MasterRun run;
  const long n_samples = n_steps / stride + 2;
  run.times.reserve(n_samples);
  run.states.reserve(n_samples);
  const auto push_sample = [&](double tt) {
    DensityMatrix m(d, d);
    for (int j = 0; j < d; ++j) {
      for (int i = 0; i < d; ++i) {
        m(i, j) = std::polar(1.0, -(nexc[i] - nexc[j]) * tt) * v[i + static_cast<Eigen::Index>(d) * j];
      }
    }
    run.times.push_back(tt);
    run.states.push_back(std::move(m));
  };

  double work = 0.0;
  for (long step = 0; step < n_steps; ++step) {
    const double t0 = schedule.duration * static_cast<double>(step) / static_cast<double>(n_steps);
    const double t1 = schedule.duration * static_cast<double>(step + 1) / static_cast<double>(n_steps);
    if (step % stride == 0) push_sample(t0);

    const double e_pre = ramp ? exc_of(v) : 0.0;

    apply(t0, v, k1);
    stage = v + (0.5 * dt_eff) * k1;
    apply(0.5 * (t0 + t1), stage, k2);
    stage = v + (0.5 * dt_eff) * k2;
    apply(0.5 * (t0 + t1), stage, k3);
    stage = v + dt_eff * k3;
    apply(t1, stage, k4);
    v += (dt_eff / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    // Restore exact Hermiticity; the generator preserves it only up to roundoff.
    for (int j = 0; j < d; ++j) {
      v[static_cast<Eigen::Index>(j) * (d + 1)] = Complex(v[static_cast<Eigen::Index>(j) * (d + 1)].real(), 0.0);
      for (int i = j + 1; i < d; ++i) {
        const Eigen::Index lo = i + static_cast<Eigen::Index>(d) * j;
        const Eigen::Index up = j + static_cast<Eigen::Index>(d) * i;
        const Complex mean = 0.5 * (v[lo] + std::conj(v[up]));
        v[lo] = mean;
        v[up] = std::conj(mean);
      }
    }

    double trace = 0.0;
    for (int i = 0; i < d; ++i) trace += v[static_cast<Eigen::Index>(i) * (d + 1)].real();
    const double drift = std::abs(trace - 1.0);
    if (!std::isfinite(trace) || drift > 1e-8) {
      throw std::runtime_error("evolve_master: trace drift exceeded 1e-8; reduce dt");
    }
    run.max_trace_drift = std::max(run.max_trace_drift, drift);

    if (ramp) {
      const double e_post = exc_of(v);
      work += 0.5 * (e_pre + e_post) * (schedule.omega_at(t1) - schedule.omega_at(t0));
    }
  }
  push_sample(schedule.duration);
  run.final_state = run.states.back();
  run.work = work;
  return run;
}

namespace {

void check_sse(const PureState& psi0, const JCParams& params, const HilbertSpace& space,
               const RampSchedule& schedule, const MeasurementScheme& m, double dt,
               MeasurementKind expected, const char* name) {
  if (params.n_qubits != 1 || space.n_qubits != 1) {
    throw std::invalid_argument(std::string(name) + ": single qubit only");
  }
  if (space.fock_cutoff < 1) {
    throw std::invalid_argument(std::string(name) + ": fock_cutoff >= 1 required");
  }
  if (!(params.g >= 0.0)) throw std::invalid_argument(std::string(name) + ": g >= 0 required");
  check_schedule(schedule);
  if (psi0.size() != space.dim()) {
    throw std::invalid_argument(std::string(name) + ": psi0 dimension mismatch");
  }
  if (std::abs(psi0.norm() - 1.0) > 1e-8) {
    throw std::invalid_argument(std::string(name) + ": psi0 must be normalized");
  }
  if (!(m.lambda >= 0.0)) throw std::invalid_argument(std::string(name) + ": lambda >= 0 required");
  if (m.kind == MeasurementKind::none && m.lambda != 0.0) {
    throw std::invalid_argument(std::string(name) + ": lambda > 0 needs a measurement kind");
  }
  if (m.kind != MeasurementKind::none && m.kind != expected) {
    throw std::invalid_argument(std::string(name) + ": measurement kind mismatch");
  }
  if (!(dt > 0.0) || !(dt * params.g < 0.05) || !(dt * m.lambda < 0.01)) {
    throw std::invalid_argument(std::string(name) + ": need dt > 0, dt*g < 0.05, dt*lambda < 0.01");
  }
}

// Basis layout for one qubit: |g,n> at n, |e,n> at F + n with F = fock_cutoff+1.
struct SseGrid {
  int fdim;
  std::vector<double> cpl;  // cpl[n] = g sqrt(n+1) couples |e,n> <-> |g,n+1>

  SseGrid(const HilbertSpace& space, double g) : fdim(space.fock_cutoff + 1) {
    cpl.resize(fdim - 1);
    for (int n = 0; n + 1 < fdim; ++n) cpl[n] = g * std::sqrt(static_cast<double>(n + 1));
  }

  double excited_weight(const PureState& psi) const {
    double pe = 0.0;
    for (int n = 0; n < fdim; ++n) pe += std::norm(psi[fdim + n]);
    return pe;
  }

  // dpsi += -i dt (H_rot - delta/2) psi: diagonal -delta/2 (ground rows),
  // +delta/2 (excited rows), plus the exchange coupling.
  void add_hamiltonian(const PureState& psi, double delta, double dt, PureState& dpsi) const {
    const Complex mi_dt(0.0, -dt);
    const Complex hg = mi_dt * (-0.5 * delta);
    const Complex he = mi_dt * (0.5 * delta);
    for (int n = 0; n < fdim; ++n) {
      dpsi[n] = hg * psi[n];
      dpsi[fdim + n] = he * psi[fdim + n];
    }
    for (int n = 0; n + 1 < fdim; ++n) {
      const Complex c = mi_dt * cpl[n];
      dpsi[fdim + n] += c * psi[n + 1];
      dpsi[n + 1] += c * psi[fdim + n];
    }
  }
};

void sse_sample(TrajectoryRecord& rec, double t, const PureState& psi, double omega, double g,
                const SseGrid& grid) {
  const int fdim = grid.fdim;
  const auto [cos_t, sin_t] = mixing_angles(omega - 1.0, g, 0);
  const Complex amp_e0 = psi[fdim];
  const Complex amp_g1 = psi[1];
  rec.times.push_back(t);
  rec.sigma_z.push_back(2.0 * grid.excited_weight(psi) - 1.0);
  rec.pop_branch2.push_back(std::norm(cos_t * amp_e0 - sin_t * amp_g1));
  rec.pop_branch1.push_back(std::norm(sin_t * amp_e0 + cos_t * amp_g1));
  rec.pop_e0.push_back(std::norm(amp_e0));
  rec.pop_g1.push_back(std::norm(amp_g1));
}

void renormalize(PureState& psi, const char* name) {
  const double nrm = psi.norm();
  if (!std::isfinite(nrm) || nrm < 1e-6) {
    throw std::runtime_error(std::string(name) + ": state norm collapsed");
  }
  psi /= nrm;
}

}  // namespace

TrajectoryRecord evolve_sse_dispersive(const PureState& psi0, const JCParams& params,
                                       const HilbertSpace& space, const RampSchedule& schedule,
                                       const MeasurementScheme& m, double dt, RngStream& rng) {
  check_sse(psi0, params, space, schedule, m, dt, MeasurementKind::dispersive,
            "evolve_sse_dispersive");
  const SseGrid grid(space, params.g);
  const int fdim = grid.fdim;
  const double lambda = m.lambda;

  const long n_steps = step_count(schedule.duration, dt);
  const double dt_eff = schedule.duration / static_cast<double>(n_steps);
  const long stride = std::max<long>(1, n_steps / 2000);

  TrajectoryRecord rec;
  rec.seed_index = rng.index();
  const long n_samples = n_steps / stride + 2;
  for (auto* s : {&rec.times, &rec.sigma_z, &rec.pop_branch2, &rec.pop_branch1, &rec.pop_e0,
                  &rec.pop_g1}) {
    s->reserve(n_samples);
  }

  PureState psi = psi0 / psi0.norm();
  PureState dpsi(psi.size());
  const double noise_scale = std::sqrt(2.0 * lambda * dt_eff);
  double work = 0.0;

  for (long step = 0; step < n_steps; ++step) {
    const double t0 = schedule.duration * static_cast<double>(step) / static_cast<double>(n_steps);
    const double t1 = schedule.duration * static_cast<double>(step + 1) / static_cast<double>(n_steps);
    if (step % stride == 0) sse_sample(rec, t0, psi, schedule.omega_at(t0), params.g, grid);

    const double s_pre = 2.0 * grid.excited_weight(psi) - 1.0;
    grid.add_hamiltonian(psi, schedule.omega_at(t0) - 1.0, dt_eff, dpsi);
    if (lambda > 0.0) {
      // sigma_z is diagonal, so [-lambda (sigma_z - s)^2 dt
      // + sqrt(2 lambda) (sigma_z - s) dw] acts row-wise.
      const double dw = noise_scale * rng.gaussian();
      const double fg = -1.0 - s_pre;
      const double fe = 1.0 - s_pre;
      const double cg = -lambda * dt_eff * fg * fg + dw * fg;
      const double ce = -lambda * dt_eff * fe * fe + dw * fe;
      for (int n = 0; n < fdim; ++n) {
        dpsi[n] += cg * psi[n];
        dpsi[fdim + n] += ce * psi[fdim + n];
      }
    }
    psi += dpsi;
    renormalize(psi, "evolve_sse_dispersive");

    const double s_post = 2.0 * grid.excited_weight(psi) - 1.0;
    work += work_increment(0.5 * (s_pre + s_post), schedule.omega_at(t1) - schedule.omega_at(t0));
  }
  sse_sample(rec, schedule.duration, psi, schedule.omega_end, params.g, grid);
  rec.work = work;
  return rec;
}

TrajectoryRecord evolve_sse_jump(const PureState& psi0, const JCParams& params,
                                 const HilbertSpace& space, const RampSchedule& schedule,
                                 const MeasurementScheme& m, double dt, RngStream& rng) {
  check_sse(psi0, params, space, schedule, m, dt, MeasurementKind::absorptive, "evolve_sse_jump");
  const SseGrid grid(space, params.g);
  const int fdim = grid.fdim;
  const double lambda = m.lambda;

  const long n_steps = step_count(schedule.duration, dt);
  const double dt_eff = schedule.duration / static_cast<double>(n_steps);
  const long stride = std::max<long>(1, n_steps / 2000);

  TrajectoryRecord rec;
  rec.seed_index = rng.index();
  const long n_samples = n_steps / stride + 2;
  for (auto* s : {&rec.times, &rec.sigma_z, &rec.pop_branch2, &rec.pop_branch1, &rec.pop_e0,
                  &rec.pop_g1}) {
    s->reserve(n_samples);
  }

  PureState psi = psi0 / psi0.norm();
  PureState dpsi(psi.size());
  double work = 0.0;

  for (long step = 0; step < n_steps; ++step) {
    const double t0 = schedule.duration * static_cast<double>(step) / static_cast<double>(n_steps);
    const double t1 = schedule.duration * static_cast<double>(step + 1) / static_cast<double>(n_steps);
    if (step % stride == 0) sse_sample(rec, t0, psi, schedule.omega_at(t0), params.g, grid);

    const double pe = grid.excited_weight(psi);
    const double s_pre = 2.0 * pe - 1.0;
    // One uniform per step regardless of outcome keeps the draw sequence a
    // pure function of (seed, step), independent of the trajectory history.
    const double u = rng.uniform();
    double s_post;
    if (lambda > 0.0 && u <= lambda * pe * dt_eff && pe >= 1e-12) {
      for (int n = 0; n < fdim; ++n) {
        psi[n] = psi[fdim + n];
        psi[fdim + n] = Complex(0.0, 0.0);
      }
      renormalize(psi, "evolve_sse_jump");
      rec.jump_times.push_back(t1);
      s_post = -1.0;
    } else {
      grid.add_hamiltonian(psi, schedule.omega_at(t0) - 1.0, dt_eff, dpsi);
      if (lambda > 0.0) {
        // No-jump drift (lambda/2)(<sigma+ sigma-> - sigma+ sigma-) dt.
        const double cg = 0.5 * lambda * dt_eff * pe;
        const double ce = 0.5 * lambda * dt_eff * (pe - 1.0);
        for (int n = 0; n < fdim; ++n) {
          dpsi[n] += cg * psi[n];
          dpsi[fdim + n] += ce * psi[fdim + n];
        }
      }
      psi += dpsi;
      renormalize(psi, "evolve_sse_jump");
      s_post = 2.0 * grid.excited_weight(psi) - 1.0;
    }
    work += work_increment(0.5 * (s_pre + s_post), schedule.omega_at(t1) - schedule.omega_at(t0));
  }
  sse_sample(rec, schedule.duration, psi, schedule.omega_end, params.g, grid);
  rec.work = work;
  return rec;
}

}  // namespace polariton
