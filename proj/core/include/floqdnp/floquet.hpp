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

#ifndef FLOQDNP_FLOQUET_HPP_
#define FLOQDNP_FLOQUET_HPP_

#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "floqdnp/sequence.hpp"
#include "floqdnp/spin_ops.hpp"
#include "floqdnp/trajectory.hpp"

namespace floqdnp {

// a^(k) = (1/T_c) * integral of alpha(t) exp(-i k omega_c t), for |k| <= k_max.
class FourierSpectrum {
 public:
  FourierSpectrum(int k_max, double cycle_frequency, std::vector<Complex> ax,
                  std::vector<Complex> ay, std::vector<Complex> az);

  int k_max() const noexcept { return k_max_; }
  double cycle_frequency() const noexcept { return cycle_frequency_; }

  // Throw std::out_of_range for |k| > k_max.
  Complex x(int k) const { return ax_.at(index(k)); }
  Complex y(int k) const { return ay_.at(index(k)); }
  Complex z(int k) const { return az_.at(index(k)); }

  // Largest |a_x^(k)|, |a_y^(k)| over 1 <= k <= k_max.
  double max_transverse_magnitude() const;

  // Sum over |k| <= k_max of |a_x|^2 + |a_y|^2 + |a_z|^2.
  double parseval_sum() const;

 private:
  std::size_t index(int k) const;

  int k_max_;
  double cycle_frequency_;
  std::vector<Complex> ax_, ay_, az_;
};

// Uniform-grid coefficients c_k = (1/N) sum_j v_j exp(-2 pi i j k / N) for
// |k| <= k_max, via FFTW. Requires v.size() >= 32 * k_max (DomainError).
std::vector<Complex> fourier_series(std::span<const double> v, int k_max);

FourierSpectrum fourier_coefficients(const TrajectoryGrid& traj, int k_max);

double chi_dq(Complex ax, Complex ay);
double chi_zq(Complex ax, Complex ay);

struct ScalingFactors {
  int k_max = 0;
  std::vector<double> dq, zq;  // index k + k_max

  double dq_at(int k) const { return dq.at(static_cast<std::size_t>(k + k_max)); }
  double zq_at(int k) const { return zq.at(static_cast<std::size_t>(k + k_max)); }
};

ScalingFactors scaling_factors(const FourierSpectrum& spec);

enum class Verdict { unimodal_dq, unimodal_zq, bimodal };
std::string_view to_string(Verdict v);

struct SymmetryReport {
  double tolerance = 0.0;
  // min over sign s, shift sigma of max_i |Y_i - s X(t_i + sigma T_c/4)|
  double quadrature_residual = 0.0;
  int quadrature_sign = 1;
  int quadrature_shift = 1;
  // Same, restricted to samples where neither t_i nor the shifted time lies
  // inside a pulse. Equals quadrature_residual for ideal-pulse trajectories.
  double free_quadrature_residual = 0.0;
  double xy_time_reversal_residual = 0.0;

  // Index k - 1 for k = 1..k_max; coefficients normalized by the largest
  // transverse magnitude. max_scaling is NaN where dq fails.
  std::vector<double> dq_residual, zq_residual, max_scaling_residual;

  int harmonic = 3;  // resonance order the verdict refers to
  Verdict verdict = Verdict::bimodal;
  // Every odd order passes either the DQ or the ZQ condition.
  bool unimodal_all_orders = false;

  double dq_at(int k) const { return dq_residual.at(static_cast<std::size_t>(k - 1)); }
  double zq_at(int k) const { return zq_residual.at(static_cast<std::size_t>(k - 1)); }
  double max_scaling_at(int k) const {
    return max_scaling_residual.at(static_cast<std::size_t>(k - 1));
  }
};

inline constexpr double kUnimodalTolerance = 1e-6;

// harmonic must lie in [1, k_max].
SymmetryReport symmetry_report(const TrajectoryGrid& traj, const FourierSpectrum& spec,
                               double tol = kUnimodalTolerance, int harmonic = 3);

// H^(n,k) = (A_x / 2) (a^(k) . S) I_{+/-} on the electron-nucleus pair
// (electron first).
struct FloquetComponent {
  int n = 1;
  int k = 0;
  ComplexMatrix op;
  double a_x = 0.0;
  double a_z = 0.0;
};

FloquetComponent effective_hamiltonian(const FourierSpectrum& spec, double a_x, double a_z, int n,
                                       int k);

// Secular part at resonance omega_0n = k omega_c:
// H^(+1,-k) + H^(-1,+k) + A_z (a^(0) . S) I_z.
ComplexMatrix resonant_hamiltonian(const FourierSpectrum& spec, double a_x, double a_z, int k);

// Angular frequency of the dominant oscillation of <I_z>(t) under a static
// pair Hamiltonian, starting from a polarized electron and an unpolarized
// nucleus.
double dominant_exchange_frequency(const ComplexMatrix& h_pair);

struct FinitenessRow {
  double f = 0.0;
  double abs_ax = 0.0;
  double abs_ay = 0.0;
  double chi_dq = 0.0;
  double chi_zq = 0.0;
};

// One row per grid point, in grid order, evaluated at harmonic k.
// An empty grid is an InputError; builder failures propagate.
std::vector<FinitenessRow> finiteness_sweep(Variant variant, double omega_0n, int k,
                                            std::span<const double> f_grid, int samples = 4096);

// k, Re a_x, Im a_x, Re a_y, Im a_y, Re a_z, Im a_z, chi_DQ, chi_ZQ.
void write_spectrum_csv(std::ostream& out, const FourierSpectrum& spec);
// k, chi_DQ, chi_ZQ for k = 0..k_max.
void write_scaling_csv(std::ostream& out, const ScalingFactors& chi);
// f, abs_ax, abs_ay, chi_DQ, chi_ZQ.
void write_finiteness_csv(std::ostream& out, std::span<const FinitenessRow> rows);

}  // namespace floqdnp

#endif  // FLOQDNP_FLOQUET_HPP_
