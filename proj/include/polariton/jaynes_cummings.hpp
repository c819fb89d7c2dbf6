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

#ifndef POLARITON_JAYNES_CUMMINGS_HPP
#define POLARITON_JAYNES_CUMMINGS_HPP

#include <utility>

#include "polariton/quantum_core.hpp"

namespace polariton {

// Qubit(s) coupled to a single field mode under the rotating-wave
// approximation, natural units (hbar = 1, field frequency = 1):
//   H = (omega/2) (Sz + N) + a^dag a + g (a S+ + a^dag S-)
// with Sz, S+- collective over N qubits.  The uncoupled ground state |g..g,0>
// sits at energy zero.
struct JCParams {
  double omega = 1.0;  // qubit transition frequency, units of omega_L
  double g = 0.013;    // vacuum Rabi coupling, units of omega_L
  int n_qubits = 1;

  double delta() const { return omega - 1.0; }
};

// One branch of the dressed doublet that diagonalizes the n-excitation block
// span{|e,n>, |g,n+1>} (single qubit).  Branch labels follow the detuning
// convention, not energy order bookkeeping at each point: branch 2 is the
// lower-energy branch everywhere (the gap Omega_n never closes for g > 0),
// qubit-like for large negative detuning and photon-like for large positive
// detuning; branch 1 is the opposite.  Labels are therefore continuous
// through the avoided crossing.
struct DressedLevel {
  int branch = 2;  // 1 or 2
  int n = 0;
  double energy = 0;
  double cos_theta = 0;
  double sin_theta = 0;
  PureState state;  // bare-basis amplitudes in `space`
};

struct DressedPair {
  DressedLevel branch2;  // lower energy
  DressedLevel branch1;  // upper energy
};

// Two lowest single-excitation dressed states of two identical qubits sharing
// the mode:
//   |phi+> = sin(theta/2)|gg,1> + cos(theta/2)|s,0>
//   |phi-> = cos(theta/2)|gg,1> - sin(theta/2)|s,0>
// with |s,0> = (|ge,0> + |eg,0>)/sqrt(2) and energies (omega + 1 +- Omega1)/2,
// Omega1 = sqrt(delta^2 + 8 g^2).
struct TwoQubitDressed {
  double energy_plus = 0;
  double energy_minus = 0;
  double cos_half = 0;
  double sin_half = 0;
  PureState plus;
  PureState minus;
};

// Generalized n-excitation Rabi frequency sqrt(delta^2 + 4 g^2 (n+1)).
double rabi_frequency(double delta, double g, int n);

// (cos theta_n, sin theta_n) of the n-excitation doublet, both non-negative:
// cos = (Omega_n - delta) / r, sin = 2 g sqrt(n+1) / r with r normalizing.
// At g = 0 the angle degenerates to the bare-level limit (0 below the
// crossing, pi/2 above, pi/4 exactly at delta = 0).
std::pair<double, double> mixing_angles(double delta, double g, int n);

// Analytic dressed doublet of the n-excitation block.  `space` must hold one
// qubit and fock_cutoff >= n + 1.  g = 0 is accepted and produces the bare
// levels (mixing angle 0 or pi/2 by side of the crossing, pi/4 exactly at
// delta = 0 by continuity convention).
DressedPair dressed_levels(const JCParams& params, int n, const HilbertSpace& space);

// Full Hamiltonian matrix on `space` for any n_qubits >= 1.
Operator jc_hamiltonian(const JCParams& params, const HilbertSpace& space);

// Total excitation number (qubit excitations + photons); commutes with the
// Hamiltonian above.
Operator excitation_number(const HilbertSpace& space);

TwoQubitDressed two_qubit_dressed(const JCParams& params, const HilbertSpace& space);

// Minimum splitting of the lowest dressed doublet at delta = 0: 2 sqrt(N) g.
double avoided_crossing_gap(int n_qubits, double g);

}  // namespace polariton

#endif  // POLARITON_JAYNES_CUMMINGS_HPP
