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

#include "floqdnp/floquet.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "floqdnp/errors.hpp"
#include "floqdnp/text_format.hpp"

namespace floqdnp {

namespace {

// FFTW planning is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwPlan {
  explicit FftwPlan(int n)
      : in(fftw_alloc_complex(n)), out(fftw_alloc_complex(n)) {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  ~FftwPlan() {
    {
      std::lock_guard lock(planner_mutex());
      fftw_destroy_plan(plan);
    }
    fftw_free(in);
    fftw_free(out);
  }
  FftwPlan(const FftwPlan&) = delete;
  FftwPlan& operator=(const FftwPlan&) = delete;

  fftw_complex* in;
  fftw_complex* out;
  fftw_plan plan;
};

double max_residual(std::span<const double> y, std::span<const double> x, double sign) {
  double r = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) r = std::max(r, std::abs(y[i] - sign * x[i]));
  return r;
}

const SpinOperatorSet& pair_ops() {
  static const SpinOperatorSet ops(2);
  return ops;
}

// a . S on the pair space.
ComplexMatrix electron_vector(Complex ax, Complex ay, Complex az) {
  const auto& s = pair_ops().site(0);
  return ax * s.x + ay * s.y + az * s.z;
}

}  // namespace

FourierSpectrum::FourierSpectrum(int k_max, double cycle_frequency, std::vector<Complex> ax,
                                 std::vector<Complex> ay, std::vector<Complex> az)
    : k_max_(k_max),
      cycle_frequency_(cycle_frequency),
      ax_(std::move(ax)),
      ay_(std::move(ay)),
      az_(std::move(az)) {
  const auto n = static_cast<std::size_t>(2 * k_max + 1);
  if (k_max < 0 || ax_.size() != n || ay_.size() != n || az_.size() != n) {
    throw std::invalid_argument("FourierSpectrum: coefficient arrays must have 2 k_max + 1 entries");
  }
}

std::size_t FourierSpectrum::index(int k) const {
  if (k < -k_max_ || k > k_max_) {
    throw std::out_of_range("harmonic " + std::to_string(k) + " outside |k| <= " +
                            std::to_string(k_max_));
  }
  return static_cast<std::size_t>(k + k_max_);
}

double FourierSpectrum::max_transverse_magnitude() const {
  double m = 0.0;
  for (int k = 1; k <= k_max_; ++k) m = std::max({m, std::abs(x(k)), std::abs(y(k))});
  return m;
}

double FourierSpectrum::parseval_sum() const {
  double s = 0.0;
  for (std::size_t i = 0; i < ax_.size(); ++i) {
    s += std::norm(ax_[i]) + std::norm(ay_[i]) + std::norm(az_[i]);
  }
  return s;
}

std::vector<Complex> fourier_series(std::span<const double> v, int k_max) {
  if (k_max < 0) throw DomainError("k_max must be non-negative");
  const auto n = static_cast<long long>(v.size());
  if (n < 32LL * std::max(k_max, 1)) {
    throw DomainError("grid too coarse: N = " + std::to_string(n) + " < 32 k_max = " +
                      std::to_string(32LL * std::max(k_max, 1)));
  }
  FftwPlan p(static_cast<int>(n));
  for (long long j = 0; j < n; ++j) {
    p.in[j][0] = v[static_cast<std::size_t>(j)];
    p.in[j][1] = 0.0;
  }
  fftw_execute(p.plan);
  std::vector<Complex> c(static_cast<std::size_t>(2 * k_max + 1));
  const double scale = 1.0 / static_cast<double>(n);
  for (int k = -k_max; k <= k_max; ++k) {
    const long long j = (k % n + n) % n;
    c[static_cast<std::size_t>(k + k_max)] = Complex(p.out[j][0], p.out[j][1]) * scale;
  }
  return c;
}

FourierSpectrum fourier_coefficients(const TrajectoryGrid& traj, int k_max) {
  if (k_max < 1) throw DomainError("k_max must be at least 1");
  if (!(traj.cycle_time > 0.0)) throw DomainError("trajectory has no cycle time");
  return FourierSpectrum(k_max, kTwoPi / traj.cycle_time, fourier_series(traj.x, k_max),
                         fourier_series(traj.y, k_max), fourier_series(traj.z, k_max));
}

double chi_dq(Complex ax, Complex ay) {
  return std::hypot(ax.real() + ay.imag(), ax.imag() - ay.real());
}

double chi_zq(Complex ax, Complex ay) {
  return std::hypot(ax.real() - ay.imag(), ax.imag() + ay.real());
}

ScalingFactors scaling_factors(const FourierSpectrum& spec) {
  ScalingFactors s;
  s.k_max = spec.k_max();
  for (int k = -spec.k_max(); k <= spec.k_max(); ++k) {
    s.dq.push_back(chi_dq(spec.x(k), spec.y(k)));
    s.zq.push_back(chi_zq(spec.x(k), spec.y(k)));
  }
  return s;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::unimodal_dq: return "unimodal-DQ";
    case Verdict::unimodal_zq: return "unimodal-ZQ";
    case Verdict::bimodal: return "bimodal";
  }
  return "bimodal";
}

SymmetryReport symmetry_report(const TrajectoryGrid& traj, const FourierSpectrum& spec,
                               double tol, int harmonic) {
  const auto n = static_cast<std::size_t>(traj.samples);
  if (n % 4 != 0 || traj.x.size() != n || traj.y.size() != n) {
    throw DomainError("grid granularity: N must be a multiple of 4");
  }
  if (harmonic < 1 || harmonic > spec.k_max()) {
    throw DomainError("verdict harmonic " + std::to_string(harmonic) + " outside 1..k_max");
  }
  SymmetryReport r;
  r.tolerance = tol;
  r.harmonic = harmonic;

  r.quadrature_residual = std::numeric_limits<double>::infinity();
  r.free_quadrature_residual = std::numeric_limits<double>::infinity();
  const std::size_t q = n / 4;
  for (int shift : {1, -1}) {
    const std::vector<double> xs = quarter_shift(traj.x, shift);
    const std::size_t offset = shift > 0 ? q : n - q;
    for (int sign : {1, -1}) {
      const double res = max_residual(traj.y, xs, sign);
      if (res < r.quadrature_residual) {
        r.quadrature_residual = res;
        r.quadrature_sign = sign;
        r.quadrature_shift = shift;
      }
      double free_res = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (traj.in_pulse.empty() || traj.in_pulse[i] || traj.in_pulse[(i + offset) % n]) continue;
        free_res = std::max(free_res, std::abs(traj.y[i] - sign * xs[i]));
      }
      r.free_quadrature_residual = std::min(r.free_quadrature_residual, free_res);
    }
  }
  r.xy_time_reversal_residual = max_residual(traj.y, time_reverse(traj.x), 1.0);

  const double scale = spec.max_transverse_magnitude();
  const double inv = scale > 0.0 ? 1.0 / scale : 0.0;
  r.unimodal_all_orders = true;
  for (int k = 1; k <= spec.k_max(); ++k) {
    const Complex ax = spec.x(k) * inv;
    const Complex ay = spec.y(k) * inv;
    const double dq = std::max(std::abs(ax.real() - ay.imag()), std::abs(ax.imag() + ay.real()));
    const double zq = std::max(std::abs(ax.real() + ay.imag()), std::abs(ax.imag() - ay.real()));
    double mx = std::numeric_limits<double>::quiet_NaN();
    if (dq < tol) {
      const double v[4] = {ax.real(), ay.imag(), -ax.imag(), ay.real()};
      mx = 0.0;
      for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) mx = std::max(mx, std::abs(v[a] - v[b]));
      }
    }
    r.dq_residual.push_back(dq);
    r.zq_residual.push_back(zq);
    r.max_scaling_residual.push_back(mx);
    if (k % 2 == 1 && !(dq < tol || zq < tol)) r.unimodal_all_orders = false;
  }

  if (r.dq_at(harmonic) < tol) {
    r.verdict = Verdict::unimodal_dq;
  } else if (r.zq_at(harmonic) < tol) {
    r.verdict = Verdict::unimodal_zq;
  } else {
    r.verdict = Verdict::bimodal;
  }
  return r;
}

FloquetComponent effective_hamiltonian(const FourierSpectrum& spec, double a_x, double a_z, int n,
                                       int k) {
  if (n != 1 && n != -1) throw std::invalid_argument("effective_hamiltonian: n must be +1 or -1");
  if (k < -spec.k_max() || k > spec.k_max()) {
    throw DomainError("harmonic " + std::to_string(k) + " outside |k| <= " +
                      std::to_string(spec.k_max()));
  }
  const auto& nucleus = pair_ops().site(1);
  FloquetComponent c;
  c.n = n;
  c.k = k;
  c.a_x = a_x;
  c.a_z = a_z;
  c.op = (0.5 * a_x) * electron_vector(spec.x(k), spec.y(k), spec.z(k)) *
         (n > 0 ? nucleus.plus : nucleus.minus);
  return c;
}

ComplexMatrix resonant_hamiltonian(const FourierSpectrum& spec, double a_x, double a_z, int k) {
  ComplexMatrix h = effective_hamiltonian(spec, a_x, a_z, 1, -k).op +
                    effective_hamiltonian(spec, a_x, a_z, -1, k).op;
  h += a_z * electron_vector(spec.x(0), spec.y(0), spec.z(0)) * pair_ops().site(1).z;
  return h;
}

double dominant_exchange_frequency(const ComplexMatrix& h_pair) {
  if (h_pair.rows() != 4 || h_pair.cols() != 4) {
    throw std::invalid_argument("dominant_exchange_frequency: expected a 4x4 pair Hamiltonian");
  }
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (h_pair + h_pair.adjoint()));
  const ComplexMatrix& v = es.eigenvectors();
  const Eigen::VectorXd& e = es.eigenvalues();

  // |up><up| (x) 1/2 = (1/2 + S_z) / 2
  const auto& ops = pair_ops();
  const ComplexMatrix rho = 0.5 * (0.5 * ops.identity() + ops.site(0).z);
  const ComplexMatrix& iz = ops.site(1).z;
  const ComplexMatrix rho_e = v.adjoint() * rho * v;
  const ComplexMatrix iz_e = v.adjoint() * iz * v;

  const double span = std::max(e.cwiseAbs().maxCoeff(), 1e-300);
  std::map<long long, std::pair<double, double>> bins;  // quantized frequency
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const double w = std::abs(e(i) - e(j));
      if (w <= 1e-12 * span) continue;
      const double amp = 2.0 * std::abs(rho_e(i, j) * iz_e(j, i));
      auto& b = bins[std::llround(w / (1e-9 * span))];
      b.first += amp;
      b.second = w;
    }
  }
  double best_amp = 0.0, best_w = 0.0;
  for (const auto& [key, b] : bins) {
    if (b.first > best_amp) {
      best_amp = b.first;
      best_w = b.second;
    }
  }
  return best_w;
}

std::vector<FinitenessRow> finiteness_sweep(Variant variant, double omega_0n, int k,
                                            std::span<const double> f_grid, int samples) {
  if (f_grid.empty()) throw InputError("finiteness grid is empty");
  std::vector<FinitenessRow> rows;
  rows.reserve(f_grid.size());
  for (double f : f_grid) {
    const PulseSequence seq = build_pulsepol(omega_0n, k, f, variant);
    const TrajectoryGrid traj = interaction_frame_trajectory(seq, 0.0, samples);
    const FourierSpectrum spec = fourier_coefficients(traj, k);
    rows.push_back({f, std::abs(spec.x(k)), std::abs(spec.y(k)), chi_dq(spec.x(k), spec.y(k)),
                    chi_zq(spec.x(k), spec.y(k))});
  }
  return rows;
}

void write_spectrum_csv(std::ostream& out, const FourierSpectrum& spec) {
  using text::format_double;
  out << "k,re_ax,im_ax,re_ay,im_ay,re_az,im_az,chi_DQ,chi_ZQ\n";
  for (int k = -spec.k_max(); k <= spec.k_max(); ++k) {
    const Complex ax = spec.x(k), ay = spec.y(k), az = spec.z(k);
    out << k << ',' << format_double(ax.real()) << ',' << format_double(ax.imag()) << ','
        << format_double(ay.real()) << ',' << format_double(ay.imag()) << ','
        << format_double(az.real()) << ',' << format_double(az.imag()) << ','
        << format_double(chi_dq(ax, ay)) << ',' << format_double(chi_zq(ax, ay)) << '\n';
  }
}

void write_scaling_csv(std::ostream& out, const ScalingFactors& chi) {
  out << "k,chi_DQ,chi_ZQ\n";
  for (int k = 0; k <= chi.k_max; ++k) {
    out << k << ',' << text::format_double(chi.dq_at(k)) << ','
        << text::format_double(chi.zq_at(k)) << '\n';
  }
}

void write_finiteness_csv(std::ostream& out, std::span<const FinitenessRow> rows) {
  using text::format_double;
  out << "f,abs_ax,abs_ay,chi_DQ,chi_ZQ\n";
  for (const auto& r : rows) {
    out << format_double(r.f) << ',' << format_double(r.abs_ax) << ','
        << format_double(r.abs_ay) << ',' << format_double(r.chi_dq) << ','
        << format_double(r.chi_zq) << '\n';
  }
}

}  // namespace floqdnp
