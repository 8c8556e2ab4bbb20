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

#include "floqdnp_cli/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "floqdnp/errors.hpp"
#include "floqdnp/floquet.hpp"
#include "floqdnp/sequence.hpp"
#include "floqdnp/sequence_io.hpp"
#include "floqdnp/simulator.hpp"
#include "floqdnp/spin_system.hpp"
#include "floqdnp/text_format.hpp"
#include "floqdnp/trajectory.hpp"

namespace floqdnp::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kDefaultLarmorHz = 15e6;
constexpr int kDefaultHarmonic = 3;
constexpr double kDefaultFiniteness = 1.9;
constexpr double kDefaultLockUs = 10.0;
constexpr int kDefaultSamples = 16384;
constexpr int kDefaultKmax = 15;
constexpr double kDefaultMacroCycle = 36e-6;
constexpr double kDefaultContact = 4e-3;
constexpr int kDefaultOrientations = 32;

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ostringstream buffer;
  body(buffer);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw InputError("cannot write '" + path.string() + "'");
  f << buffer.str();
  if (!f) throw InputError("failed writing '" + path.string() + "'");
}

fs::path output_dir(const std::string& out) {
  fs::path dir = out.empty() ? fs::path(".") : fs::path(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw InputError("output directory '" + dir.string() + "' unavailable");
  return dir;
}

json residual_array(const std::vector<double>& v) {
  json a = json::array();
  for (double r : v) a.push_back(std::isnan(r) ? json(nullptr) : json(r));
  return a;
}

// The label the sequence family is known for, if any.
json reference_verdict(const PulseSequence& seq) {
  if (seq.variant == Variant::qpulsepol) return std::string(to_string(Verdict::unimodal_dq));
  return nullptr;
}

struct PresetArgs {
  std::string name;
  double f = kDefaultFiniteness;
  int k = kDefaultHarmonic;
  double larmor_hz = kDefaultLarmorHz;
  double lock_us = kDefaultLockUs;
  std::string out;
};

struct AnalyzeArgs {
  std::string sequence;
  double offset_hz = 0.0;
  int samples = kDefaultSamples;
  int kmax = kDefaultKmax;
  std::string out;
};

struct SweepArgs {
  std::string variant = "both";
  double larmor_hz = kDefaultLarmorHz;
  int k = kDefaultHarmonic;
  std::string grid = "1:20:0.5";
  int samples = 4096;
  std::string out;
};

struct SimulateArgs {
  std::string system;
  std::string sequence;
  double contact = kDefaultContact;
  double macro_cycle = kDefaultMacroCycle;
  std::string reset = "on";
  int orientations = kDefaultOrientations;
  std::string offset_grid;
  std::string out;
};

int cmd_presets(const PresetArgs& a, std::ostream& out) {
  const double larmor = a.larmor_hz * kTwoPi;
  PulseSequence seq;
  if (a.name == "novel") {
    seq = build_novel(larmor, a.lock_us * 1e-6);
  } else {
    seq = build_pulsepol(larmor, a.k, a.f, *variant_from_string(a.name));
  }
  const std::string doc = serialize_sequence(seq);
  if (a.out.empty()) {
    out << doc;
  } else {
    write_file(a.out, [&](std::ostream& o) { o << doc; });
  }
  return kOk;
}

int cmd_analyze(const AnalyzeArgs& a) {
  const PulseSequence seq = load_sequence(a.sequence);
  const int harmonic = seq.k >= 1 ? seq.k : 1;
  if (a.kmax < harmonic) {
    throw DomainError("--kmax " + std::to_string(a.kmax) + " is below the sequence harmonic " +
                      std::to_string(harmonic));
  }
  const TrajectoryGrid traj = interaction_frame_trajectory(seq, a.offset_hz * kTwoPi, a.samples);
  const FourierSpectrum spec = fourier_coefficients(traj, a.kmax);
  const ScalingFactors chi = scaling_factors(spec);
  const SymmetryReport rep = symmetry_report(traj, spec, kUnimodalTolerance, harmonic);

  const fs::path dir = output_dir(a.out);
  write_file(dir / "trajectory.csv", [&](std::ostream& o) { write_trajectory_csv(o, traj); });
  write_file(dir / "spectrum.csv", [&](std::ostream& o) { write_spectrum_csv(o, spec); });
  write_file(dir / "scaling.csv", [&](std::ostream& o) { write_scaling_csv(o, chi); });

  json j;
  j["sequence"] = seq.name;
  j["variant"] = std::string(to_string(seq.variant));
  j["f"] = seq.finiteness;
  j["k"] = seq.k;
  j["samples"] = a.samples;
  j["k_max"] = a.kmax;
  j["offset_hz"] = a.offset_hz;
  j["tolerance"] = rep.tolerance;
  j["harmonic"] = rep.harmonic;
  j["verdict"] = std::string(to_string(rep.verdict));
  j["reference_verdict"] = reference_verdict(seq);
  j["unimodal_all_orders"] = rep.unimodal_all_orders;
  j["chi_DQ"] = chi.dq_at(harmonic);
  j["chi_ZQ"] = chi.zq_at(harmonic);
  j["residuals"] = {
      {"quadrature", rep.quadrature_residual},
      {"quadrature_sign", rep.quadrature_sign},
      {"quadrature_shift", rep.quadrature_shift},
      {"quadrature_free_precession", rep.free_quadrature_residual},
      {"xy_time_reversal", rep.xy_time_reversal_residual},
      {"pure_dq", residual_array(rep.dq_residual)},
      {"pure_zq", residual_array(rep.zq_residual)},
      {"max_scaling", residual_array(rep.max_scaling_residual)},
  };
  write_file(dir / "symmetry.json", [&](std::ostream& o) { o << j.dump(2) << '\n'; });
  return kOk;
}

int cmd_sweep(const SweepArgs& a) {
  const std::vector<double> grid = parse_grid(a.grid);
  const double larmor = a.larmor_hz * kTwoPi;
  const fs::path dir = output_dir(a.out);
  auto run_one = [&](Variant v, const fs::path& file) {
    const auto rows = finiteness_sweep(v, larmor, a.k, grid, a.samples);
    write_file(file, [&](std::ostream& o) { write_finiteness_csv(o, rows); });
  };
  if (a.variant == "both") {
    // Validate both before writing either.
    for (Variant v : {Variant::pulsepol, Variant::qpulsepol}) {
      for (double f : grid) build_pulsepol(larmor, a.k, f, v);
    }
    run_one(Variant::pulsepol, dir / "finiteness_pulsepol.csv");
    run_one(Variant::qpulsepol, dir / "finiteness_qpulsepol.csv");
  } else {
    run_one(*variant_from_string(a.variant), dir / "finiteness.csv");
  }
  return kOk;
}

int cmd_simulate(const SimulateArgs& a) {
  const SpinSystem sys = load_spin_system(a.system);
  const PulseSequence seq = load_sequence(a.sequence);
  BuildupSettings settings;
  settings.total_contact = a.contact;
  settings.macro_cycle = a.macro_cycle;
  settings.reset = a.reset == "on" ? ElectronReset::on : ElectronReset::off;
  if (a.orientations < 1) throw InputError("--orientations must be at least 1");
  const OrientationGrid grid = cos_uniform_grid(a.orientations);

  const fs::path dir = output_dir(a.out);
  if (!a.offset_grid.empty()) {
    std::vector<double> offsets = parse_grid(a.offset_grid);
    for (double& o : offsets) o *= kTwoPi;
    const auto profile = offset_profile(sys, seq, offsets, settings, grid);
    write_file(dir / "offset.csv", [&](std::ostream& o) { write_offset_csv(o, profile); });
  } else {
    const BuildupCurve curve = simulate(sys, seq, settings, grid);
    write_file(dir / "buildup.csv", [&](std::ostream& o) { write_buildup_csv(o, curve); });
  }
  return kOk;
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw InputError("grid '" + spec + "' must be a:b:step");
    const double a = text::parse_number(parts[0], 0, 0);
    const double b = text::parse_number(parts[1], 0, 0);
    const double step = text::parse_number(parts[2], 0, 0);
    if (!(step > 0.0)) throw InputError("grid step must be positive");
    if (b < a) throw InputError("grid '" + spec + "' is empty");
    const auto n = static_cast<long long>(std::floor((b - a) / step + 1e-9)) + 1;
    if (n > 1000000) throw InputError("grid '" + spec + "' has too many points");
    for (long long i = 0; i < n; ++i) out.push_back(a + static_cast<double>(i) * step);
    return out;
  }
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ',');) {
    if (p.empty()) throw InputError("grid '" + spec + "' has an empty entry");
    out.push_back(text::parse_number(p, 0, 0));
  }
  if (out.empty()) throw InputError("grid is empty");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Floquet analysis and spin-dynamics simulation of pulsed DNP sequences", "floqdnp"};
  app.require_subcommand(1);

  PresetArgs preset;
  auto* presets = app.add_subcommand("presets", "Print a preset sequence file");
  presets->add_option("name", preset.name, "novel, pulsepol or qpulsepol")->required();
  presets->add_option("--f", preset.f, "Finiteness factor (pulsepol, qpulsepol)")
      ->capture_default_str();
  presets->add_option("--k", preset.k, "Resonance harmonic, omega_0n = k omega_c")
      ->capture_default_str();
  presets->add_option("--omega-0n-hz", preset.larmor_hz, "Nuclear Larmor frequency in Hz")
      ->capture_default_str();
  presets->add_option("--lock-us", preset.lock_us, "Spin-lock duration for novel, microseconds")
      ->capture_default_str();
  presets->add_option("--out", preset.out, "Write to this file instead of standard output");

  AnalyzeArgs analyze;
  auto* an = app.add_subcommand("analyze", "Trajectory, spectrum, scaling factors and symmetry");
  an->add_option("sequence", analyze.sequence, "Sequence file")->required();
  an->add_option("--offset-hz", analyze.offset_hz, "Electron offset in Hz")->capture_default_str();
  an->add_option("--samples", analyze.samples, "Samples per cycle (multiple of 4, >= 1024)")
      ->capture_default_str();
  an->add_option("--kmax", analyze.kmax, "Highest harmonic reported")->capture_default_str();
  an->add_option("--out", analyze.out, "Output directory (default: current)");

  SweepArgs sweep;
  auto* sw = app.add_subcommand("sweep", "Fourier coefficients at harmonic k versus f");
  sw->add_option("--variant", sweep.variant, "pulsepol, qpulsepol or both")
      ->check(CLI::IsMember({"pulsepol", "qpulsepol", "both"}))
      ->capture_default_str();
  sw->add_option("--omega-0n-hz", sweep.larmor_hz, "Nuclear Larmor frequency in Hz")
      ->capture_default_str();
  sw->add_option("--k", sweep.k, "Resonance harmonic")->capture_default_str();
  sw->add_option("--grid", sweep.grid, "f values: a:b:step or a comma list")->capture_default_str();
  sw->add_option("--samples", sweep.samples, "Samples per cycle")->capture_default_str();
  sw->add_option("--out", sweep.out, "Output directory (default: current)");

  SimulateArgs sim;
  auto* si = app.add_subcommand("simulate", "Density-matrix buildup or offset profile");
  si->add_option("system", sim.system, "Spin-system file")->required();
  si->add_option("sequence", sim.sequence, "Sequence file")->required();
  si->add_option("--contact", sim.contact, "Total contact time in seconds")->capture_default_str();
  si->add_option("--macro-cycle", sim.macro_cycle, "Record/reset interval in seconds")
      ->capture_default_str();
  si->add_option("--reset", sim.reset, "Repolarize the electron every macro cycle: on or off")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  si->add_option("--orientations", sim.orientations, "Powder grid size (cos-uniform)")
      ->capture_default_str();
  si->add_option("--grid", sim.offset_grid,
                 "Electron offsets in Hz (a:b:step or list); writes offset.csv instead");
  si->add_option("--out", sim.out, "Output directory (default: current)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (presets->parsed()) {
      if (!variant_from_string(preset.name) || preset.name == "custom") {
        throw InputError("unknown preset '" + preset.name + "' (novel, pulsepol, qpulsepol)");
      }
      return cmd_presets(preset, out);
    }
    if (an->parsed()) return cmd_analyze(analyze);
    if (sw->parsed()) return cmd_sweep(sweep);
    if (si->parsed()) return cmd_simulate(sim);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
  return kInputError;
}

}  // namespace floqdnp::cli
