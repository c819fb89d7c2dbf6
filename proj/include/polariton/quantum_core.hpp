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

#ifndef POLARITON_QUANTUM_CORE_HPP
#define POLARITON_QUANTUM_CORE_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace polariton {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using PureState = Eigen::VectorXcd;
using DensityMatrix = Eigen::MatrixXcd;

// Physical constants, SI. Everything else in this library works in natural
// units: hbar = 1 and the field frequency omega_L = 1, so energies, rates and
// detunings are in units of omega_L and times in units of 1/omega_L.
inline constexpr double kHbar = 1.054571817e-34;      // J s
inline constexpr double kBoltzmann = 1.380649e-23;    // J / K

// Composite (qubits x field) space with a truncated Fock ladder.
// Basis ordering is fixed: the packed qubit index varies slowest and the Fock
// index fastest, |q, n> -> q * (fock_cutoff + 1) + n.  For several qubits the
// packed index q has qubit 0 in the most significant bit; bit value 1 means
// the qubit is excited.
struct HilbertSpace {
  int n_qubits = 1;
  int fock_cutoff = 3;

  int fock_dim() const { return fock_cutoff + 1; }
  int qubit_dim() const { return 1 << n_qubits; }
  int dim() const { return qubit_dim() * fock_dim(); }
  int index(int q, int n) const;
  // Inverse of index().
  int qubit_of(int i) const { return i / fock_dim(); }
  int fock_of(int i) const { return i % fock_dim(); }
};

// sigma_z, sigma_+, sigma_- of one qubit embedded in the composite space.
struct QubitOps {
  Operator sz;
  Operator sp;
  Operator sm;
};

struct EigResult {
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXcd vectors;  // column k belongs to values[k]
};

// Truncated annihilation operator on a bare Fock ladder of dimension
// n_max + 1.  The truncation deforms the canonical commutator:
// [a, a^dag] = I - (n_max + 1) |n_max><n_max|.
Operator annihilation_op(int n_max);

// Annihilation operator embedded in the composite space (identity on qubits).
Operator field_annihilation(const HilbertSpace& space);

QubitOps qubit_ops(const HilbertSpace& space, int which = 0);

// Kronecker product, row-major convention: (A (x) B)|i,j> = A|i> (x) B|j>.
Operator tensor(const Operator& a, const Operator& b);

// max_ij |A_ij - conj(A_ji)|
double hermiticity_error(const Operator& a);

// Eigendecomposition of a Hermitian matrix.  Eigenvalues come out ascending
// with orthonormal eigenvectors; each eigenvector's global phase is fixed by
// making its largest-magnitude component (lowest index on ties) real and
// positive.  Throws std::invalid_argument if the matrix is not Hermitian
// within 1e-12 (relative to its largest entry).
EigResult eig_hermitian(const Operator& a);

Complex expectation(const Operator& op, const PureState& psi);
Complex expectation(const Operator& op, const DensityMatrix& rho);

// |<k|psi>|^2 (resp. Re rho_kk) for every basis index k, in basis order.
// The pure-state overload requires |psi| normalized within 1e-8.
std::vector<double> populations(const PureState& psi);
std::vector<double> populations(const DensityMatrix& rho);

}  // namespace polariton

#endif  // POLARITON_QUANTUM_CORE_HPP
