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

#include "floqdnp/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include <Eigen/Eigenvalues>

#include "floqdnp/errors.hpp"
#include "floqdnp/text_format.hpp"

namespace floqdnp {

namespace {

// Electron-traced reset: [[A, B], [C, D]] -> [[A + D, 0], [0, 0]].
void reset_electron(ComplexMatrix& rho) {
  const Eigen::Index h = rho.rows() / 2;
  const ComplexMatrix nuclear = rho.topLeftCorner(h, h) + rho.bottomRightCorner(h, h);
  rho.setZero();
  rho.topLeftCorner(h, h) = nuclear;
}

// Newton-Schulz refinement towards the closest unitary. Products of many
// segment propagators drift from unitarity by ~1e-14, enough to move Tr rho
// by 1e-12 over a long contact; two or three steps bring it to rounding.
ComplexMatrix nearest_unitary(ComplexMatrix u) {
  const ComplexMatrix eye = ComplexMatrix::Identity(u.rows(), u.cols());
  double defect = unitarity_defect(u);
  for (int it = 0; it < 8 && defect > 1e-15 && defect < 0.5; ++it) {
    const ComplexMatrix next = 0.5 * u * (3.0 * eye - u.adjoint() * u);
    const double d = unitarity_defect(next);
    if (d >= defect) break;
    u = next;
    defect = d;
  }
  return u;
}

double diagonal_expectation(const ComplexMatrix& rho, const ComplexMatrix& diag_op) {
  double s = 0.0;
  for (Eigen::Index d = 0; d < rho.rows(); ++d) s += rho(d, d).real() * diag_op(d, d).real();
  return s;
}

}  // namespace

ComplexMatrix build_hamiltonian(const SpinSystem& sys, std::optional<Drive> drive) {
  validate(sys);
  const SpinOperatorSet ops(sys.n_spins());
  const SiteOperators& s = ops.site(0);
  ComplexMatrix h = sys.offset * s.z;
  for (int i = 0; i < sys.n_nuclei(); ++i) {
    const auto [a_z, a_x] = sys.hyperfine(i);
    const SiteOperators& n = ops.site(i + 1);
    h += a_z * (s.z * n.z) + a_x * (s.z * n.x) + sys.omega_0n * n.z;
  }
  for (const auto& c : sys.couplings) {
    const SiteOperators& a = ops.site(c.i + 1);
    const SiteOperators& b = ops.site(c.j + 1);
    h += c.d * (2.0 * (a.z * b.z) - a.x * b.x - a.y * b.y);
  }
  if (drive) h += drive->omega_1 * (std::cos(drive->phase) * s.x + std::sin(drive->phase) * s.y);
  // Symmetrize away rounding in the products so H is Hermitian exactly.
  return 0.5 * (h + h.adjoint());
}

ComplexMatrix cycle_propagator(const SpinSystem& sys, const PulseSequence& seq) {
  const auto issues = validate_structure(seq);
  if (!issues.empty()) throw DomainError("invalid sequence: " + issues.front().message);
  if (seq.elements.empty()) throw DomainError("invalid sequence: no elements");

  // One eigendecomposition per distinct generator (free evolution and each
  // pulse phase), reused for every segment that shares it.
  std::map<double, HermitianPropagator> pulses;
  std::optional<HermitianPropagator> free;
  ComplexMatrix u = ComplexMatrix::Identity(sys.dim(), sys.dim());
  for (const auto& e : seq.elements) {
    if (e.duration == 0.0) continue;
    const HermitianPropagator* gen = nullptr;
    if (e.is_pulse()) {
      auto it = pulses.find(e.phase);
      if (it == pulses.end()) {
        it = pulses.emplace(e.phase, HermitianPropagator(build_hamiltonian(
                                         sys, Drive{seq.omega_1, e.phase})))
                 .first;
      }
      gen = &it->second;
    } else {
      if (!free) free.emplace(build_hamiltonian(sys));
      gen = &*free;
    }
    u = gen->at(e.duration) * u;
  }
  return u;
}

ComplexMatrix matrix_power(const ComplexMatrix& u, long long m) {
  if (m < 0) throw std::invalid_argument("matrix_power: negative exponent");
  ComplexMatrix result = ComplexMatrix::Identity(u.rows(), u.cols());
  ComplexMatrix base = u;
  while (m > 0) {
    if (m & 1) result = base * result;
    m >>= 1;
    if (m > 0) base = base * base;
  }
  return result;
}

std::vector<double> BuildupCurve::summed(std::span<const int> nuclei) const {
  std::vector<double> out(times.size(), 0.0);
  for (int i : nuclei) {
    const auto& series = iz.at(static_cast<std::size_t>(i));
    for (std::size_t t = 0; t < out.size(); ++t) out[t] += series[t];
  }
  return out;
}

BuildupCurve simulate_buildup(const SpinSystem& sys, const PulseSequence& seq,
                              const BuildupSettings& settings) {
  validate(sys);
  if (!(settings.total_contact >= 0.0) || !std::isfinite(settings.total_contact)) {
    throw DomainError("contact time must be non-negative");
  }
  const double tc = seq.cycle_time;
  if (!(tc > 0.0)) throw DomainError("invalid sequence: cycle time must be positive");
  if (!(settings.macro_cycle >= tc * (1.0 - 1e-9)) || !std::isfinite(settings.macro_cycle)) {
    throw DomainError("macro cycle must be at least one sequence cycle");
  }
  const long long m = std::max(1LL, std::llround(settings.macro_cycle / tc));
  const double macro = static_cast<double>(m) * tc;
  const auto steps = static_cast<long long>(std::floor(settings.total_contact / macro + 1e-9));

  const ComplexMatrix u = nearest_unitary(matrix_power(nearest_unitary(cycle_propagator(sys, seq)), m));
  const ComplexMatrix u_dag = u.adjoint();

  const SpinOperatorSet ops(sys.n_spins());
  const Eigen::Index dim = sys.dim();
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  rho.topLeftCorner(dim / 2, dim / 2).setIdentity();
  rho /= static_cast<double>(dim / 2);

  BuildupCurve curve;
  curve.iz.resize(static_cast<std::size_t>(sys.n_nuclei()));
  curve.min_eigenvalue = 0.0;
  auto record = [&](long long step) {
    curve.times.push_back(static_cast<double>(step) * macro);
    curve.sz.push_back(diagonal_expectation(rho, ops.site(0).z));
    for (int i = 0; i < sys.n_nuclei(); ++i) {
      curve.iz[static_cast<std::size_t>(i)].push_back(diagonal_expectation(rho, ops.site(i + 1).z));
    }
    curve.max_trace_defect = std::max(curve.max_trace_defect, std::abs(rho.trace() - 1.0));
    curve.max_hermiticity_defect = std::max(curve.max_hermiticity_defect, hermiticity_defect(rho));
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (rho + rho.adjoint()),
                                                          Eigen::EigenvaluesOnly);
    curve.min_eigenvalue = std::min(curve.min_eigenvalue, es.eigenvalues().minCoeff());
  };

  record(0);
  for (long long step = 1; step <= steps; ++step) {
    rho = u * rho * u_dag;
    record(step);
    if (settings.reset == ElectronReset::on) reset_electron(rho);
  }
  return curve;
}

OrientationGrid cos_uniform_grid(int n) {
  if (n < 1) throw DomainError("orientation grid needs at least one point");
  OrientationGrid g;
  for (int j = 0; j < n; ++j) {
    const double c = -1.0 + (2.0 * j + 1.0) / n;
    g.theta.push_back(std::acos(c));
    g.weight.push_back(1.0 / n);
  }
  return g;
}

OrientationGrid theta_uniform_grid(int n) {
  if (n < 1) throw DomainError("orientation grid needs at least one point");
  OrientationGrid g;
  for (int j = 0; j < n; ++j) {
    const double th = kPi * (j + 0.5) / n;
    g.theta.push_back(th);
    g.weight.push_back(std::sin(th));
  }
  const double total = pairwise_sum(g.weight);
  for (double& w : g.weight) w /= total;
  return g;
}

double pairwise_sum(std::span<const double> values) {
  if (values.empty()) return 0.0;
  if (values.size() == 1) return values[0];
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

BuildupCurve powder_average(const SpinSystem& sys, const PulseSequence& seq,
                            const OrientationGrid& grid, const BuildupSettings& settings) {
  if (grid.theta.empty()) throw DomainError("orientation grid is empty");
  if (grid.theta.size() != grid.weight.size()) {
    throw std::invalid_argument("powder_average: theta and weight sizes differ");
  }
  std::vector<BuildupCurve> runs;
  runs.reserve(grid.theta.size());
  for (double th : grid.theta) runs.push_back(simulate_buildup(sys.at_orientation(th), seq, settings));

  BuildupCurve avg;
  avg.times = runs.front().times;
  const std::size_t nt = avg.times.size();
  std::vector<double> terms(runs.size());
  auto average = [&](auto&& value_of) {
    std::vector<double> out(nt);
    for (std::size_t t = 0; t < nt; ++t) {
      for (std::size_t o = 0; o < runs.size(); ++o) terms[o] = grid.weight[o] * value_of(runs[o], t);
      out[t] = pairwise_sum(terms);
    }
    return out;
  };
  avg.sz = average([](const BuildupCurve& c, std::size_t t) { return c.sz[t]; });
  avg.iz.resize(runs.front().iz.size());
  for (std::size_t i = 0; i < avg.iz.size(); ++i) {
    avg.iz[i] = average([i](const BuildupCurve& c, std::size_t t) { return c.iz[i][t]; });
  }
  for (const auto& r : runs) {
    avg.max_trace_defect = std::max(avg.max_trace_defect, r.max_trace_defect);
    avg.max_hermiticity_defect = std::max(avg.max_hermiticity_defect, r.max_hermiticity_defect);
    avg.min_eigenvalue = std::min(avg.min_eigenvalue, r.min_eigenvalue);
  }
  return avg;
}

BuildupCurve simulate(const SpinSystem& sys, const PulseSequence& seq,
                      const BuildupSettings& settings, const OrientationGrid& grid) {
  if (sys.has_powder()) return powder_average(sys, seq, grid, settings);
  return simulate_buildup(sys, seq, settings);
}

std::vector<OffsetPoint> offset_profile(const SpinSystem& sys, const PulseSequence& seq,
                                        std::span<const double> offsets,
                                        const BuildupSettings& settings,
                                        const OrientationGrid& grid) {
  if (!(settings.total_contact > 0.0)) throw DomainError("contact time must be positive");
  std::vector<OffsetPoint> out;
  out.reserve(offsets.size());
  std::vector<int> all(static_cast<std::size_t>(sys.n_nuclei()));
  for (int i = 0; i < sys.n_nuclei(); ++i) all[static_cast<std::size_t>(i)] = i;
  for (double offset : offsets) {
    SpinSystem shifted = sys;
    shifted.offset = offset;
    const BuildupCurve c = simulate(shifted, seq, settings, grid);
    out.push_back({offset, c.summed(all).back()});
  }
  return out;
}

void write_buildup_csv(std::ostream& out, const BuildupCurve& curve) {
  out << "t_s,Sz";
  for (std::size_t i = 0; i < curve.iz.size(); ++i) out << ",Iz_" << i + 1;
  out << '\n';
  for (std::size_t t = 0; t < curve.times.size(); ++t) {
    out << text::format_double(curve.times[t]) << ',' << text::format_double(curve.sz[t]);
    for (const auto& series : curve.iz) out << ',' << text::format_double(series[t]);
    out << '\n';
  }
}

void write_offset_csv(std::ostream& out, std::span<const OffsetPoint> profile) {
  out << "offset_hz,bulk_Iz\n";
  for (const auto& p : profile) {
    out << text::format_scaled(p.offset, kTwoPi) << ',' << text::format_double(p.bulk_iz) << '\n';
  }
}

}  // namespace floqdnp
