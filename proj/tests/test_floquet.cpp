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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "floqdnp/errors.hpp"
#include "floqdnp/floquet.hpp"
#include "oracles.hpp"

namespace floqdnp {
namespace {

constexpr double kLarmor = kTwoPi * 15e6;
const Complex kI{0.0, 1.0};

TrajectoryGrid synthetic(int n, auto&& fx, auto&& fy, auto&& fz) {
  TrajectoryGrid g;
  g.cycle_time = 1e-6;
  g.samples = n;
  for (int i = 0; i < n; ++i) {
    const double phase = kTwoPi * i / n;
    g.x.push_back(fx(phase));
    g.y.push_back(fy(phase));
    g.z.push_back(fz(phase));
  }
  g.element.assign(n, 0);
  g.in_pulse.assign(n, 0);
  return g;
}

TrajectoryGrid preset(Variant v, double f, int n = 8192) {
  return interaction_frame_trajectory(build_pulsepol(kLarmor, 3, f, v), 0.0, n);
}

TEST(Floquet, ConstantTrajectory) {
  const auto g = synthetic(1024, [](double) { return 1.0; }, [](double) { return 0.0; },
                           [](double) { return 0.0; });
  const auto spec = fourier_coefficients(g, 8);
  EXPECT_NEAR(std::abs(spec.x(0) - 1.0), 0.0, 1e-15);
  for (int k = -8; k <= 8; ++k) {
    if (k != 0) EXPECT_LT(std::abs(spec.x(k)), 1e-15);
    EXPECT_LT(std::abs(spec.y(k)), 1e-15);
  }
  const auto chi = scaling_factors(spec);
  EXPECT_NEAR(chi.dq_at(0), 1.0, 1e-15);
  EXPECT_NEAR(chi.zq_at(0), 1.0, 1e-15);
}

TEST(Floquet, CircleHarmonic) {
  const auto g = synthetic(1024, [](double p) { return std::cos(p); },
                           [](double p) { return std::sin(p); }, [](double) { return 0.0; });
  const auto spec = fourier_coefficients(g, 4);
  EXPECT_LT(std::abs(spec.x(1) - 0.5), 1e-14);
  EXPECT_LT(std::abs(spec.y(1) + 0.5 * kI), 1e-14);
  const auto chi = scaling_factors(spec);
  EXPECT_NEAR(chi.zq_at(1), 1.0, 1e-14);
  EXPECT_NEAR(chi.dq_at(1), 0.0, 1e-14);
  EXPECT_DOUBLE_EQ(spec.cycle_frequency(), kTwoPi / 1e-6);
}

TEST(Floquet, GridMustResolveHarmonics) {
  const auto t = preset(Variant::qpulsepol, 2.0, 1024);
  EXPECT_NO_THROW(fourier_coefficients(t, 32));
  EXPECT_THROW(fourier_coefficients(t, 33), DomainError);
  EXPECT_THROW(fourier_coefficients(t, 0), DomainError);
  const auto spec = fourier_coefficients(t, 4);
  EXPECT_THROW(spec.x(5), std::out_of_range);
}

TEST(Floquet, FastTransformMatchesDirectSum) {
  for (Variant v : {Variant::pulsepol, Variant::qpulsepol}) {
    for (double f : {1.0, 3.0}) {
      const auto t = preset(v, f, 4096);
      const auto spec = fourier_coefficients(t, 50);
      for (int k = -50; k <= 50; ++k) {
        EXPECT_LT(std::abs(spec.x(k) - oracle::direct_dft(t.x, k)), 1e-9);
        EXPECT_LT(std::abs(spec.y(k) - oracle::direct_dft(t.y, k)), 1e-9);
        EXPECT_LT(std::abs(spec.z(k) - oracle::direct_dft(t.z, k)), 1e-9);
      }
    }
  }
}

TEST(Floquet, ConjugateSymmetry) {
  oracle::Gen gen(31);
  for (int trial = 0; trial < 10; ++trial) {
    const auto t = interaction_frame_trajectory(gen.sequence(), kTwoPi * gen.uniform(-2e6, 2e6), 4096);
    const auto spec = fourier_coefficients(t, 50);
    for (int k = 1; k <= 50; ++k) {
      EXPECT_LT(std::abs(spec.x(-k) - std::conj(spec.x(k))), 1e-10);
      EXPECT_LT(std::abs(spec.y(-k) - std::conj(spec.y(k))), 1e-10);
      EXPECT_LT(std::abs(spec.z(-k) - std::conj(spec.z(k))), 1e-10);
    }
  }
}

TEST(Floquet, ParsevalConvergesWithBandwidth) {
  const auto t = preset(Variant::qpulsepol, 1.9, 16384);
  double previous = 0.0;
  for (int kmax : {5, 50, 200, 512}) {
    const double s = fourier_coefficients(t, kmax).parseval_sum();
    EXPECT_GE(s, previous);
    EXPECT_LE(s, 1.0 + 1e-12);
    previous = s;
  }
  EXPECT_GT(previous, 1.0 - 1e-6);
}

TEST(Floquet, TimeOriginCovariance) {
  oracle::Gen gen(37);
  for (int trial = 0; trial < 8; ++trial) {
    const auto t = interaction_frame_trajectory(gen.sequence(), 0.0, 4096);
    const int d = gen.integer(1, 4095);
    TrajectoryGrid r = t;
    for (int i = 0; i < t.samples; ++i) {
      const int src = ((i - d) % t.samples + t.samples) % t.samples;
      r.x[i] = t.x[src];
      r.y[i] = t.y[src];
      r.z[i] = t.z[src];
    }
    const auto a = fourier_coefficients(t, 15);
    const auto b = fourier_coefficients(r, 15);
    const auto ca = scaling_factors(a);
    const auto cb = scaling_factors(b);
    for (int k = -15; k <= 15; ++k) {
      const Complex phase = std::polar(1.0, -kTwoPi * k * d / t.samples);
      EXPECT_LT(std::abs(b.x(k) - a.x(k) * phase), 1e-12);
      EXPECT_LT(std::abs(b.y(k) - a.y(k) * phase), 1e-12);
      EXPECT_NEAR(ca.dq_at(k), cb.dq_at(k), 1e-9);
      EXPECT_NEAR(ca.zq_at(k), cb.zq_at(k), 1e-9);
    }
  }
}

TEST(Floquet, ResidualMatchesAlgebraicForm) {
  for (Variant v : {Variant::pulsepol, Variant::qpulsepol}) {
    for (double f : {1.0, 1.9, 20.0}) {
      const auto t = preset(v, f);
      const auto spec = fourier_coefficients(t, 15);
      const auto rep = symmetry_report(t, spec);
      const double m = spec.max_transverse_magnitude();
      for (int k = 1; k <= 15; ++k) {
        const double dq_form = std::abs(spec.y(k) - kI * spec.x(k)) / m;
        const double zq_form = std::abs(spec.y(k) + kI * spec.x(k)) / m;
        EXPECT_LE(rep.dq_at(k), dq_form + 1e-15);
        EXPECT_LE(dq_form, std::sqrt(2.0) * rep.dq_at(k) + 1e-15);
        EXPECT_LE(rep.zq_at(k), zq_form + 1e-15);
        EXPECT_LE(zq_form, std::sqrt(2.0) * rep.zq_at(k) + 1e-15);
        // chi_ZQ is |a_y - i a_x|, chi_DQ is |a_y + i a_x|.
        EXPECT_NEAR(chi_zq(spec.x(k), spec.y(k)), dq_form * m, 1e-14);
        EXPECT_NEAR(chi_dq(spec.x(k), spec.y(k)), zq_form * m, 1e-14);
      }
    }
  }
}

TEST(Floquet, QPulsePolIsUnimodal) {
  for (double f : {1.0, 1.05, 1.9, 5.0}) {
    const auto t = preset(Variant::qpulsepol, f, 16384);
    const auto spec = fourier_coefficients(t, 15);
    const auto rep = symmetry_report(t, spec);
    EXPECT_EQ(rep.verdict, Verdict::unimodal_dq) << f;
    EXPECT_TRUE(rep.unimodal_all_orders);
    EXPECT_LT(rep.quadrature_residual, 1e-6);
    EXPECT_LT(rep.xy_time_reversal_residual, 1e-6);
    EXPECT_LT(rep.max_scaling_at(3), 1e-6);
    EXPECT_LT(chi_zq(spec.x(3), spec.y(3)), 1e-9);
    EXPECT_GT(chi_dq(spec.x(3), spec.y(3)), 0.5);
  }
}

TEST(Floquet, PulsePolIsBimodalAtFinitePulses) {
  const auto t = preset(Variant::pulsepol, 1.0, 16384);
  const auto spec = fourier_coefficients(t, 15);
  const auto rep = symmetry_report(t, spec);
  EXPECT_EQ(rep.verdict, Verdict::bimodal);
  EXPECT_FALSE(rep.unimodal_all_orders);
  EXPECT_GT(rep.quadrature_residual, 0.5);
  EXPECT_GT(chi_zq(spec.x(3), spec.y(3)) / chi_dq(spec.x(3), spec.y(3)), 0.1);
}

TEST(Floquet, PulsePolApproachesIdealLimit) {
  double previous = 1.0;
  for (double f : {5.0, 20.0, 100.0}) {
    const auto t = preset(Variant::pulsepol, f, 16384);
    const auto spec = fourier_coefficients(t, 15);
    const auto rep = symmetry_report(t, spec);
    EXPECT_LT(rep.free_quadrature_residual, 1e-9) << f;
    const double ratio = chi_zq(spec.x(3), spec.y(3)) / chi_dq(spec.x(3), spec.y(3));
    EXPECT_LT(ratio, previous);
    previous = ratio;
  }
  EXPECT_LT(previous, 0.01);
}

TEST(Floquet, VerdictFollowsResidualAtHarmonic) {
  oracle::Gen gen(41);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = interaction_frame_trajectory(gen.sequence(), 0.0, 4096);
    const auto spec = fourier_coefficients(t, 15);
    const int h = 2 * gen.integer(0, 7) + 1;
    const auto rep = symmetry_report(t, spec, kUnimodalTolerance, h);
    EXPECT_EQ(rep.verdict == Verdict::unimodal_dq, rep.dq_at(h) < kUnimodalTolerance);
    if (rep.dq_at(h) >= kUnimodalTolerance) {
      EXPECT_EQ(rep.verdict == Verdict::unimodal_zq, rep.zq_at(h) < kUnimodalTolerance);
    }
    for (int k = 1; k <= 15; ++k) {
      EXPECT_EQ(std::isnan(rep.max_scaling_at(k)), !(rep.dq_at(k) < kUnimodalTolerance));
    }
  }
}

TEST(Floquet, IdealLimitSpectrum) {
  for (Variant v : {Variant::pulsepol, Variant::qpulsepol}) {
    const auto spec = fourier_coefficients(preset(v, 100.0, 16384), 15);
    int argmax = 0;
    double best = 0.0;
    for (int k = 1; k <= 15; ++k) {
      const double m = std::max(std::abs(spec.x(k)), std::abs(spec.y(k)));
      if (k % 2 == 0) EXPECT_LT(m, 1e-3) << k;
      if (m > best) {
        best = m;
        argmax = k;
      }
    }
    EXPECT_EQ(argmax, 3);
  }
}

TEST(Floquet, EffectiveHamiltonianComponents) {
  const auto spec = fourier_coefficients(preset(Variant::qpulsepol, 2.0), 7);
  const double ax = kTwoPi * 37e3;
  for (int k = -7; k <= 7; ++k) {
    const auto plus = effective_hamiltonian(spec, ax, 0.0, 1, k);
    const auto minus = effective_hamiltonian(spec, ax, 0.0, -1, -k);
    EXPECT_EQ(plus.op.rows(), 4);
    EXPECT_LT(max_abs(minus.op - plus.op.adjoint()), 1e-12 * ax);
    EXPECT_EQ(max_abs(effective_hamiltonian(spec, 0.0, 0.0, 1, k).op), 0.0);
  }
  EXPECT_THROW(effective_hamiltonian(spec, ax, 0.0, 0, 1), std::invalid_argument);
  EXPECT_THROW(effective_hamiltonian(spec, ax, 0.0, 1, 8), DomainError);
  const ComplexMatrix h = resonant_hamiltonian(spec, ax, kTwoPi * 10e3, 3);
  EXPECT_LT(hermiticity_defect(h), 1e-12 * ax);
}

TEST(Floquet, ExchangeFrequencyOfFlipFlip) {
  const double c = 1234.5;
  const SpinOperatorSet ops(2);
  const ComplexMatrix h = c * (ops.site(0).plus * ops.site(1).plus + ops.site(0).minus * ops.site(1).minus);
  EXPECT_NEAR(dominant_exchange_frequency(h), 2 * c, 1e-9 * c);
  EXPECT_EQ(dominant_exchange_frequency(ComplexMatrix::Zero(4, 4)), 0.0);
}

TEST(Floquet, FinitenessSweep) {
  const std::vector<double> grid = {1.0, 2.0, 1.5};
  const auto rows = finiteness_sweep(Variant::qpulsepol, kLarmor, 3, grid, 4096);
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_EQ(rows[i].f, grid[i]);
    const auto spec = fourier_coefficients(preset(Variant::qpulsepol, grid[i], 4096), 3);
    EXPECT_EQ(rows[i].abs_ax, std::abs(spec.x(3)));
    EXPECT_EQ(rows[i].chi_dq, chi_dq(spec.x(3), spec.y(3)));
  }
  EXPECT_THROW(finiteness_sweep(Variant::qpulsepol, kLarmor, 3, std::vector<double>{}), InputError);
  EXPECT_THROW(finiteness_sweep(Variant::pulsepol, kLarmor, 3, std::vector<double>{2.0, 0.5}),
               DomainError);
}

TEST(Floquet, CsvOutputs) {
  const auto spec = fourier_coefficients(preset(Variant::qpulsepol, 2.0, 1024), 3);
  std::ostringstream a, b, c;
  write_spectrum_csv(a, spec);
  write_scaling_csv(b, scaling_factors(spec));
  const std::vector<FinitenessRow> rows = {{1.0, 0.1, 0.2, 0.3, 0.4}};
  write_finiteness_csv(c, rows);
  const std::string sa = a.str(), sb = b.str();
  EXPECT_EQ(sa.substr(0, sa.find('\n')), "k,re_ax,im_ax,re_ay,im_ay,re_az,im_az,chi_DQ,chi_ZQ");
  EXPECT_EQ(std::count(sa.begin(), sa.end(), '\n'), 8);
  EXPECT_EQ(sb.substr(0, 15), "k,chi_DQ,chi_ZQ");
  EXPECT_EQ(std::count(sb.begin(), sb.end(), '\n'), 5);
  EXPECT_EQ(c.str(), "f,abs_ax,abs_ay,chi_DQ,chi_ZQ\n1,0.1,0.2,0.3,0.4\n");
}

}  // namespace
}  // namespace floqdnp
