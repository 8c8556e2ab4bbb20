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

#ifndef FLOQDNP_SPIN_OPS_HPP_
#define FLOQDNP_SPIN_OPS_HPP_

// Dense complex matrix helpers and spin-1/2 operator algebra for Hilbert
// spaces of up to 2^6 states. All comparisons use the max-abs-entry norm.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace floqdnp {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Relative gate used for Hermiticity and unitarity preconditions.
inline constexpr double kStructureTolerance = 1e-10;

// Largest Hilbert dimension handled by the dense routines.
inline constexpr Eigen::Index kMaxDimension = 64;

double max_abs(const ComplexMatrix& m);

// max |M - M^dagger|
double hermiticity_defect(const ComplexMatrix& m);

// max |U^dagger U - 1|
double unitarity_defect(const ComplexMatrix& u);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

// The five single-site operators of one spin-1/2, embedded in the full space.
struct SiteOperators {
  ComplexMatrix x;
  ComplexMatrix y;
  ComplexMatrix z;
  ComplexMatrix plus;
  ComplexMatrix minus;
};

// Per-site spin operators for n spins. Site 0 is the leftmost tensor factor.
class SpinOperatorSet {
 public:
  explicit SpinOperatorSet(int n_spins);

  int n_spins() const noexcept { return static_cast<int>(sites_.size()); }
  Eigen::Index dim() const noexcept { return Eigen::Index{1} << sites_.size(); }
  const SiteOperators& site(int index) const;
  const ComplexMatrix& identity() const noexcept { return identity_; }

 private:
  std::vector<SiteOperators> sites_;
  ComplexMatrix identity_;
};

// Single spin: S_x, S_y, S_z with eigenvalues +-1/2, S_+ and S_-.
SpinOperatorSet pauli_ops();

// op (2x2) acting on `site`, identity elsewhere. Throws std::out_of_range for
// a bad site and std::invalid_argument for a non-2x2 operator.
ComplexMatrix embed(const ComplexMatrix& op, int site, int n_spins);

// exp(-i H t) from the Hermitian eigendecomposition of H. Throws
// std::invalid_argument if H is not Hermitian to 1e-10 (relative).
ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t);

// Eigendecomposition of a Hermitian generator, reusable for many durations.
class HermitianPropagator {
 public:
  explicit HermitianPropagator(const ComplexMatrix& h);

  // exp(-i H t)
  ComplexMatrix at(double t) const;
  const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }

 private:
  Eigen::VectorXd eigenvalues_;
  ComplexMatrix eigenvectors_;
};

// Closed-form exp(-i t (w . S)) for a single spin-1/2, w = (wx, wy, wz) in rad/s.
Eigen::Matrix2cd spin_rotation(const Eigen::Vector3d& angular_velocity, double t);

// U^dagger op U. Throws std::invalid_argument on dimension mismatch or a
// non-unitary U.
ComplexMatrix conjugate(const ComplexMatrix& op, const ComplexMatrix& u);

}  // namespace floqdnp

#endif  // FLOQDNP_SPIN_OPS_HPP_
