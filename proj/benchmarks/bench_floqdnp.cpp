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

#include <benchmark/benchmark.h>

#include "floqdnp/floquet.hpp"
#include "floqdnp/sequence.hpp"
#include "floqdnp/simulator.hpp"
#include "floqdnp/trajectory.hpp"

namespace {

using namespace floqdnp;

constexpr double kLarmor = kTwoPi * 15e6;

SpinSystem chain(int nuclei) {
  SpinSystem s;
  s.omega_0n = kLarmor;
  s.nuclei.push_back(Nucleus::components(kTwoPi * 10e3, kTwoPi * 37e3));
  for (int i = 1; i < nuclei; ++i) {
    s.nuclei.push_back(Nucleus::components(0.0, 0.0));
    s.couplings.push_back({i - 1, i, kTwoPi * 20e3});
  }
  return s;
}

void BM_Trajectory(benchmark::State& state) {
  const auto seq = build_pulsepol(kLarmor, 3, 1.9, Variant::qpulsepol);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(interaction_frame_trajectory(seq, 0.0, n));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Trajectory)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void BM_FourierCoefficients(benchmark::State& state) {
  const auto traj = interaction_frame_trajectory(build_pulsepol(kLarmor, 3, 1.9, Variant::qpulsepol), 0.0,
                                                 static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fourier_coefficients(traj, 15));
}
BENCHMARK(BM_FourierCoefficients)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void BM_CyclePropagator(benchmark::State& state) {
  const SpinSystem sys = chain(static_cast<int>(state.range(0)));
  const auto seq = build_pulsepol(kLarmor, 3, 1.9, Variant::qpulsepol);
  for (auto _ : state) benchmark::DoNotOptimize(cycle_propagator(sys, seq));
}
BENCHMARK(BM_CyclePropagator)->DenseRange(1, 5);

void BM_Buildup(benchmark::State& state) {
  const SpinSystem sys = chain(static_cast<int>(state.range(0)));
  const auto seq = build_pulsepol(kLarmor, 3, 1.9, Variant::qpulsepol);
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_buildup(sys, seq, {36e-6, 4e-3, ElectronReset::on}));
  }
}
BENCHMARK(BM_Buildup)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
