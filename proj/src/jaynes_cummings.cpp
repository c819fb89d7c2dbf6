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

#include "polariton/jaynes_cummings.hpp"

#include <cmath>
#include <stdexcept>

namespace polariton {

namespace {

void check_params(const JCParams& params) {
  if (!(params.g >= 0.0)) throw std::invalid_argument("jaynes_cummings: g >= 0 required");
  if (!(params.omega > 0.0)) throw std::invalid_argument("jaynes_cummings: omega > 0 required");
  if (params.n_qubits < 1) throw std::invalid_argument("jaynes_cummings: n_qubits >= 1 required");
}

}  // namespace

double rabi_frequency(double delta, double g, int n) {
  if (!(g >= 0.0)) throw std::invalid_argument("rabi_frequency: g >= 0 required");
  if (n < 0) throw std::invalid_argument("rabi_frequency: n >= 0 required");
  return std::sqrt(delta * delta + 4.0 * g * g * (n + 1));
}

std::pair<double, double> mixing_angles(double delta, double g, int n) {
  const double omega_n = rabi_frequency(delta, g, n);

  double cos_t, sin_t;
  const double root = 2.0 * g * std::sqrt(double(n + 1));
  const double denom2 = (omega_n - delta) * (omega_n - delta) + root * root;
  if (denom2 > 0.0) {
    const double denom = std::sqrt(denom2);
    cos_t = (omega_n - delta) / denom;
    sin_t = root / denom;
  } else if (delta < 0.0) {
    // g = 0 below the crossing: branch 2 is the bare qubit excitation.
    cos_t = 1.0;
    sin_t = 0.0;
  } else {
    // g = 0 at the degeneracy point; equal mixing by continuity.
    cos_t = sin_t = std::sqrt(0.5);
  }
  if (g == 0.0 && delta > 0.0) {
    cos_t = 0.0;
    sin_t = 1.0;
  }
  return {cos_t, sin_t};
}

DressedPair dressed_levels(const JCParams& params, int n, const HilbertSpace& space) {
  check_params(params);
  if (params.n_qubits != 1 || space.n_qubits != 1) {
    throw std::invalid_argument("dressed_levels: single-qubit doublets only");
  }
  if (n < 0 || space.fock_cutoff < n + 1) {
    throw std::invalid_argument("dressed_levels: need fock_cutoff >= n + 1");
  }
  const double delta = params.delta();
  const double omega_n = rabi_frequency(delta, params.g, n);
  const auto [cos_t, sin_t] = mixing_angles(delta, params.g, n);

  const int ie = space.index(1, n);
  const int ig = space.index(0, n + 1);

  DressedLevel lower;
  lower.branch = 2;
  lower.n = n;
  lower.energy = params.omega + n - 0.5 * (omega_n + delta);
  lower.cos_theta = cos_t;
  lower.sin_theta = sin_t;
  lower.state = PureState::Zero(space.dim());
  lower.state(ie) = cos_t;
  lower.state(ig) = -sin_t;

  DressedLevel upper;
  upper.branch = 1;
  upper.n = n;
  upper.energy = (n + 1) + 0.5 * (omega_n + delta);
  upper.cos_theta = cos_t;
  upper.sin_theta = sin_t;
  upper.state = PureState::Zero(space.dim());
  upper.state(ie) = sin_t;
  upper.state(ig) = cos_t;

  return DressedPair{lower, upper};
}

Operator jc_hamiltonian(const JCParams& params, const HilbertSpace& space) {
  check_params(params);
  if (space.n_qubits != params.n_qubits) {
    throw std::invalid_argument("jc_hamiltonian: space/params qubit count mismatch");
  }
  const int d = space.dim();
  const Operator a = field_annihilation(space);
  Operator sz_sum = Operator::Zero(d, d);
  Operator sp_sum = Operator::Zero(d, d);
  for (int j = 0; j < space.n_qubits; ++j) {
    const QubitOps ops = qubit_ops(space, j);
    sz_sum += ops.sz;
    sp_sum += ops.sp;
  }
  Operator h = 0.5 * params.omega *
                   (sz_sum + double(space.n_qubits) * Operator::Identity(d, d)) +
               a.adjoint() * a + params.g * (a * sp_sum + (a * sp_sum).adjoint());
  return h;
}

Operator excitation_number(const HilbertSpace& space) {
  const int d = space.dim();
  Operator n_exc = Operator::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const int q = space.qubit_of(i);
    n_exc(i, i) = double(__builtin_popcount(unsigned(q)) + space.fock_of(i));
  }
  return n_exc;
}

TwoQubitDressed two_qubit_dressed(const JCParams& params, const HilbertSpace& space) {
  check_params(params);
  if (params.n_qubits != 2 || space.n_qubits != 2 || space.fock_cutoff < 1) {
    throw std::invalid_argument("two_qubit_dressed: two qubits and fock_cutoff >= 1 required");
  }
  const double delta = params.delta();
  const double omega1 = std::sqrt(delta * delta + 8.0 * params.g * params.g);

  TwoQubitDressed out;
  out.energy_plus = 0.5 * (params.omega + 1.0 + omega1);
  out.energy_minus = 0.5 * (params.omega + 1.0 - omega1);
  if (omega1 > 0.0) {
    out.cos_half = std::sqrt((omega1 + delta) / (2.0 * omega1));
    out.sin_half = std::sqrt((omega1 - delta) / (2.0 * omega1));
  } else {
    out.cos_half = out.sin_half = std::sqrt(0.5);
  }

  const int i_gg1 = space.index(0b00, 1);
  const int i_ge0 = space.index(0b01, 0);
  const int i_eg0 = space.index(0b10, 0);
  const double isq2 = std::sqrt(0.5);

  out.plus = PureState::Zero(space.dim());
  out.plus(i_gg1) = out.sin_half;
  out.plus(i_ge0) = out.cos_half * isq2;
  out.plus(i_eg0) = out.cos_half * isq2;

  out.minus = PureState::Zero(space.dim());
  out.minus(i_gg1) = out.cos_half;
  out.minus(i_ge0) = -out.sin_half * isq2;
  out.minus(i_eg0) = -out.sin_half * isq2;

  return out;
}

double avoided_crossing_gap(int n_qubits, double g) {
  if (n_qubits < 1) throw std::invalid_argument("avoided_crossing_gap: n_qubits >= 1 required");
  if (!(g >= 0.0)) throw std::invalid_argument("avoided_crossing_gap: g >= 0 required");
  return 2.0 * std::sqrt(double(n_qubits)) * g;
}

}  // namespace polariton
