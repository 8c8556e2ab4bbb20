// Copyright 2026 The floqdnp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "floqdnp/spin_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace floqdnp {

namespace {

const Complex kI{0.0, 1.0};

bool is_hermitian(const ComplexMatrix& m) {
  return hermiticity_defect(m) <= kStructureTolerance * std::max(1.0, max_abs(m));
}

}  // namespace

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermiticity_defect: matrix is not square");
  return max_abs(m - m.adjoint());
}

double unitarity_defect(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("unitarity_defect: matrix is not square");
  return max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()));
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

SpinOperatorSet::SpinOperatorSet(int n_spins) {
  if (n_spins < 1) throw std::invalid_argument("SpinOperatorSet: need at least one spin");
  if ((Eigen::Index{1} << n_spins) > kMaxDimension) {
    throw std::invalid_argument("SpinOperatorSet: Hilbert dimension exceeds 64");
  }
  Eigen::Matrix2cd sx, sy, sz, sp, sm;
  sx << 0.0, 0.5, 0.5, 0.0;
  sy << 0.0, -0.5 * kI, 0.5 * kI, 0.0;
  sz << 0.5, 0.0, 0.0, -0.5;
  sp << 0.0, 1.0, 0.0, 0.0;
  sm << 0.0, 0.0, 1.0, 0.0;
  sites_.reserve(static_cast<std::size_t>(n_spins));
  for (int i = 0; i < n_spins; ++i) {
    sites_.push_back({embed(sx, i, n_spins), embed(sy, i, n_spins), embed(sz, i, n_spins),
                      embed(sp, i, n_spins), embed(sm, i, n_spins)});
  }
  identity_ = ComplexMatrix::Identity(dim(), dim());
}

const SiteOperators& SpinOperatorSet::site(int index) const {
  if (index < 0 || index >= n_spins()) {
    throw std::out_of_range("SpinOperatorSet: site " + std::to_string(index) + " out of range");
  }
  return sites_[static_cast<std::size_t>(index)];
}

SpinOperatorSet pauli_ops() { return SpinOperatorSet(1); }

ComplexMatrix embed(const ComplexMatrix& op, int site, int n_spins) {
  if (op.rows() != 2 || op.cols() != 2) throw std::invalid_argument("embed: operator must be 2x2");
  if (n_spins < 1 || site < 0 || site >= n_spins) {
    throw std::out_of_range("embed: site " + std::to_string(site) + " outside [0, " +
                            std::to_string(n_spins) + ")");
  }
  // Kronecker product 1 (x) ... (x) op (x) ... (x) 1 built entrywise.
  const Eigen::Index dim = Eigen::Index{1} << n_spins;
  const int shift = n_spins - 1 - site;
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const Eigen::Index rbit = (r >> shift) & 1;
    for (Eigen::Index cbit = 0; cbit < 2; ++cbit) {
      const Complex v = op(rbit, cbit);
      if (v == Complex{}) continue;
      const Eigen::Index c = (r & ~(Eigen::Index{1} << shift)) | (cbit << shift);
      out(r, c) = v;
    }
  }
  return out;
}

HermitianPropagator::HermitianPropagator(const ComplexMatrix& h) {
  if (h.rows() != h.cols() || h.rows() < 1) {
    throw std::invalid_argument("expm_hermitian: generator must be square and non-empty");
  }
  if (!is_hermitian(h)) throw std::invalid_argument("expm_hermitian: generator is not Hermitian");
  // Symmetrize so round-off in the input does not leak into the eigenbasis.
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("expm_hermitian: eigendecomposition failed");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

ComplexMatrix HermitianPropagator::at(double t) const {
  Eigen::VectorXcd phases(eigenvalues_.size());
  for (Eigen::Index i = 0; i < eigenvalues_.size(); ++i) {
    phases(i) = std::exp(-kI * (eigenvalues_(i) * t));
  }
  return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t) {
  if (t == 0.0) {
    if (h.rows() != h.cols()) throw std::invalid_argument("expm_hermitian: generator must be square");
    if (!is_hermitian(h)) throw std::invalid_argument("expm_hermitian: generator is not Hermitian");
    return ComplexMatrix::Identity(h.rows(), h.cols());
  }
  if (h.rows() == 2 && h.cols() == 2 && is_hermitian(h)) {
    // H = c 1 + w . S with S = sigma / 2.
    const double c = 0.5 * (h(0, 0).real() + h(1, 1).real());
    const Eigen::Vector3d w(2.0 * h(1, 0).real(), 2.0 * h(1, 0).imag(),
                            h(0, 0).real() - h(1, 1).real());
    return std::exp(-kI * (c * t)) * ComplexMatrix(spin_rotation(w, t));
  }
  return HermitianPropagator(h).at(t);
}

Eigen::Matrix2cd spin_rotation(const Eigen::Vector3d& angular_velocity, double t) {
  const double rate = angular_velocity.norm();
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
  if (rate == 0.0 || t == 0.0) return u;
  const Eigen::Vector3d n = angular_velocity / rate;
  const double half = 0.5 * rate * t;
  const double c = std::cos(half);
  const double s = std::sin(half);
  // cos(a/2) 1 - i sin(a/2) (n . sigma)
  u(0, 0) = Complex(c, -s * n.z());
  u(1, 1) = Complex(c, s * n.z());
  u(0, 1) = Complex(-s * n.y(), -s * n.x());
  u(1, 0) = Complex(s * n.y(), -s * n.x());
  return u;
}

ComplexMatrix conjugate(const ComplexMatrix& op, const ComplexMatrix& u) {
  if (op.rows() != op.cols() || u.rows() != u.cols() || op.rows() != u.rows()) {
    throw std::invalid_argument("conjugate: dimension mismatch");
  }
  if (unitarity_defect(u) > kStructureTolerance) {
    throw std::invalid_argument("conjugate: transform is not unitary");
  }
  return u.adjoint() * op * u;
}

}  // namespace floqdnp
