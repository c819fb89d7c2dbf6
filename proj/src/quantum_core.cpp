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

#include "polariton/quantum_core.hpp"

#include <cmath>
#include <stdexcept>

namespace polariton {

int HilbertSpace::index(int q, int n) const {
  if (q < 0 || q >= qubit_dim() || n < 0 || n > fock_cutoff) {
    throw std::invalid_argument("basis label outside the truncated space");
  }
  return q * fock_dim() + n;
}

Operator annihilation_op(int n_max) {
  if (n_max < 1) throw std::invalid_argument("annihilation_op: n_max >= 1 required");
  Operator a = Operator::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

Operator field_annihilation(const HilbertSpace& space) {
  const Operator iq = Operator::Identity(space.qubit_dim(), space.qubit_dim());
  return tensor(iq, annihilation_op(space.fock_cutoff));
}

QubitOps qubit_ops(const HilbertSpace& space, int which) {
  if (which < 0 || which >= space.n_qubits) {
    throw std::invalid_argument("qubit_ops: no such qubit");
  }
  Operator sz2(2, 2), sp2(2, 2), sm2(2, 2);
  // Qubit basis order is |g> = 0, |e> = 1 (bit value 1 marks excitation).
  sz2 << -1, 0, 0, 1;
  sp2 << 0, 0, 1, 0;
  sm2 << 0, 1, 0, 0;

  auto embed = [&](const Operator& op) {
    Operator full = Operator::Identity(1, 1);
    for (int j = 0; j < space.n_qubits; ++j) {
      full = tensor(full, j == which ? op : Operator::Identity(2, 2));
    }
    const Operator ifield = Operator::Identity(space.fock_dim(), space.fock_dim());
    return tensor(full, ifield);
  };
  return QubitOps{embed(sz2), embed(sp2), embed(sm2)};
}

Operator tensor(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double hermiticity_error(const Operator& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

EigResult eig_hermitian(const Operator& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eig_hermitian: square matrix required");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if (hermiticity_error(a) > 1e-12 * scale) {
    throw std::invalid_argument("eig_hermitian: matrix is not Hermitian within 1e-12");
  }
  Eigen::SelfAdjointEigenSolver<Operator> solver(a);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
  }
  EigResult result{solver.eigenvalues(), solver.eigenvectors()};
  // Fix each eigenvector's global phase: largest-magnitude component (lowest
  // index on ties) becomes real positive.  Keeps degenerate pairs reproducible.
  for (Eigen::Index k = 0; k < result.vectors.cols(); ++k) {
    Eigen::Index imax = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < result.vectors.rows(); ++i) {
      const double mag = std::abs(result.vectors(i, k));
      if (mag > best + 1e-15) {
        best = mag;
        imax = i;
      }
    }
    const Complex pivot = result.vectors(imax, k);
    if (std::abs(pivot) > 0) result.vectors.col(k) *= std::conj(pivot) / std::abs(pivot);
  }
  return result;
}

Complex expectation(const Operator& op, const PureState& psi) {
  if (op.rows() != op.cols() || op.cols() != psi.size()) {
    throw std::invalid_argument("expectation: dimension mismatch");
  }
  return psi.dot(op * psi);  // Eigen's dot conjugates the left argument
}

Complex expectation(const Operator& op, const DensityMatrix& rho) {
  if (op.rows() != op.cols() || rho.rows() != rho.cols() || op.rows() != rho.rows()) {
    throw std::invalid_argument("expectation: dimension mismatch");
  }
  return (op * rho).trace();
}

std::vector<double> populations(const PureState& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-8) {
    throw std::invalid_argument("populations: state is not normalized within 1e-8");
  }
  std::vector<double> p(psi.size());
  for (Eigen::Index i = 0; i < psi.size(); ++i) p[i] = std::norm(psi(i));
  return p;
}

std::vector<double> populations(const DensityMatrix& rho) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("populations: square matrix required");
  std::vector<double> p(rho.rows());
  for (Eigen::Index i = 0; i < rho.rows(); ++i) p[i] = rho(i, i).real();
  return p;
}

}  // namespace polariton
