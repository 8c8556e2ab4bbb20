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

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "floqdnp/errors.hpp"
#include "floqdnp/sequence_io.hpp"
#include "floqdnp_cli/cli.hpp"
#include "json.hpp"

namespace floqdnp::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string config(const std::string& name) { return std::string(FLOQDNP_CONFIG_DIR) + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

class Scratch : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("floqdnp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
};

TEST(Cli, ParseGrid) {
  EXPECT_EQ(parse_grid("1:2:0.5"), (std::vector<double>{1.0, 1.5, 2.0}));
  EXPECT_EQ(parse_grid("3"), (std::vector<double>{3.0}));
  EXPECT_EQ(parse_grid("1,2.5,4"), (std::vector<double>{1.0, 2.5, 4.0}));
  EXPECT_EQ(parse_grid("1:20:0.5").size(), 39u);
  for (const char* bad : {"", "1:2", "2:1:0.5", "1:2:0", "1:2:-1", "1,,2", "a:b:c", "1,x"}) {
    EXPECT_THROW(parse_grid(bad), InputError) << bad;
  }
}

TEST(Cli, HelpAndUsage) {
  EXPECT_EQ(invoke({"--help"}).code, kOk);
  EXPECT_EQ(invoke({}).code, kInputError);
  EXPECT_EQ(invoke({"frobnicate"}).code, kInputError);
  EXPECT_EQ(invoke({"analyze"}).code, kInputError);
}

TEST(Cli, PresetsRoundTrip) {
  for (const char* name : {"pulsepol", "qpulsepol", "novel"}) {
    const Result r = invoke({"presets", name});
    ASSERT_EQ(r.code, kOk) << r.err;
    const PulseSequence seq = parse_sequence(r.out);
    EXPECT_EQ(serialize_sequence(seq), r.out);
  }
  const Result r = invoke({"presets", "qpulsepol", "--f", "1.05", "--k", "5"});
  ASSERT_EQ(r.code, kOk);
  const PulseSequence seq = parse_sequence(r.out);
  EXPECT_EQ(seq.k, 5);
  EXPECT_DOUBLE_EQ(seq.finiteness, 1.05);
  EXPECT_EQ(invoke({"presets", "xy8"}).code, kInputError);
  EXPECT_EQ(invoke({"presets", "pulsepol", "--f", "0.5"}).code, kDomainError);
}

TEST(Cli, ShippedPresetsMatchGenerator) {
  EXPECT_EQ(slurp(config("qpulsepol.seq")), invoke({"presets", "qpulsepol"}).out);
  EXPECT_EQ(slurp(config("pulsepol.seq")), invoke({"presets", "pulsepol"}).out);
  EXPECT_EQ(slurp(config("pulsepol_f1.seq")), invoke({"presets", "pulsepol", "--f", "1"}).out);
}

TEST_F(Scratch, AnalyzeWritesArtifacts) {
  const Result r = invoke({"analyze", config("qpulsepol_f1.seq"), "--samples", "4096", "--out", dir_.string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  for (const char* f : {"trajectory.csv", "spectrum.csv", "scaling.csv", "symmetry.json"}) {
    EXPECT_TRUE(fs::exists(dir_ / f)) << f;
  }
  const auto j = nlohmann::json::parse(slurp(dir_ / "symmetry.json"));
  EXPECT_EQ(j["verdict"], "unimodal-DQ");
  EXPECT_EQ(j["reference_verdict"], "unimodal-DQ");
  EXPECT_EQ(j["harmonic"], 3);
  EXPECT_LT(j["chi_ZQ"].get<double>(), 1e-9);
  EXPECT_LT(j["residuals"]["quadrature"].get<double>(), 1e-9);

  std::istringstream traj(slurp(dir_ / "trajectory.csv"));
  std::string line;
  int rows = -1;
  while (std::getline(traj, line)) ++rows;
  EXPECT_EQ(rows, 4096);
}

TEST_F(Scratch, AnalyzePulsePolIsBimodal) {
  ASSERT_EQ(invoke({"analyze", config("pulsepol_f1.seq"), "--out", dir_.string()}).code, kOk);
  const auto j = nlohmann::json::parse(slurp(dir_ / "symmetry.json"));
  EXPECT_EQ(j["verdict"], "bimodal");
  EXPECT_TRUE(j["reference_verdict"].is_null());
  EXPECT_TRUE(j["residuals"]["max_scaling"][2].is_null());
  EXPECT_EQ(j["residuals"]["max_scaling"].size(), 15u);
}

TEST_F(Scratch, AnalyzeIsByteDeterministic) {
  const fs::path a = dir_ / "a", b = dir_ / "b";
  fs::create_directories(a);
  fs::create_directories(b);
  ASSERT_EQ(invoke({"analyze", config("custom_example.seq"), "--out", a.string()}).code, kOk);
  ASSERT_EQ(invoke({"analyze", config("custom_example.seq"), "--out", b.string()}).code, kOk);
  for (const char* f : {"trajectory.csv", "spectrum.csv", "scaling.csv", "symmetry.json"}) {
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
}

TEST_F(Scratch, AnalyzeErrors) {
  const Result bad = invoke({"analyze", write("bad.seq", "name = x\nk = 3\nf = 2\nomega_0n_hz = 1e6\nwobble\n")});
  EXPECT_EQ(bad.code, kInputError);
  EXPECT_NE(bad.err.find("line 5"), std::string::npos) << bad.err;

  const Result gran = invoke({"analyze", config("qpulsepol.seq"), "--samples", "4098", "--out", dir_.string()});
  EXPECT_EQ(gran.code, kDomainError);
  EXPECT_NE(gran.err.find("grid granularity"), std::string::npos) << gran.err;

  EXPECT_EQ(invoke({"analyze", (dir_ / "missing.seq").string()}).code, kInputError);
  EXPECT_EQ(invoke({"analyze", config("qpulsepol.seq"), "--kmax", "2", "--out", dir_.string()}).code,
            kDomainError);
  EXPECT_EQ(invoke({"analyze", config("qpulsepol.seq"), "--samples", "abc"}).code, kInputError);
}

TEST_F(Scratch, SweepBothVariants) {
  const Result r = invoke({"sweep", "--grid", "1:3:1", "--out", dir_.string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  const std::string q = slurp(dir_ / "finiteness_qpulsepol.csv");
  EXPECT_EQ(q.substr(0, q.find('\n')), "f,abs_ax,abs_ay,chi_DQ,chi_ZQ");
  EXPECT_EQ(std::count(q.begin(), q.end(), '\n'), 4);
  EXPECT_TRUE(fs::exists(dir_ / "finiteness_pulsepol.csv"));

  ASSERT_EQ(invoke({"sweep", "--variant", "pulsepol", "--grid", "2", "--out", dir_.string()}).code, kOk);
  EXPECT_TRUE(fs::exists(dir_ / "finiteness.csv"));
}

TEST_F(Scratch, SweepErrors) {
  EXPECT_EQ(invoke({"sweep", "--grid", "", "--out", dir_.string()}).code, kInputError);
  EXPECT_EQ(invoke({"sweep", "--grid", "0.5,2", "--out", dir_.string()}).code, kDomainError);
  EXPECT_FALSE(fs::exists(dir_ / "finiteness_pulsepol.csv"));
  EXPECT_EQ(invoke({"sweep", "--variant", "xy8", "--out", dir_.string()}).code, kInputError);
}

TEST_F(Scratch, SimulateBuildupAndProfile) {
  Result r = invoke({"simulate", config("pair.sys"), config("qpulsepol.seq"), "--contact", "2e-4", "--out",
                     dir_.string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  const std::string b = slurp(dir_ / "buildup.csv");
  EXPECT_EQ(b.substr(0, b.find('\n')), "t_s,Sz,Iz_1");

  r = invoke({"simulate", config("pair.sys"), config("qpulsepol.seq"), "--contact", "1e-4", "--grid",
              "-1e6:1e6:1e6", "--out", dir_.string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  const std::string o = slurp(dir_ / "offset.csv");
  EXPECT_EQ(o.substr(0, o.find('\n')), "offset_hz,bulk_Iz");
  EXPECT_EQ(std::count(o.begin(), o.end(), '\n'), 4);
}

TEST_F(Scratch, SimulateErrors) {
  EXPECT_EQ(invoke({"simulate", (dir_ / "none.sys").string(), config("qpulsepol.seq")}).code, kInputError);
  std::string six = "omega_0n_hz = 15e6\n";
  for (int i = 0; i < 6; ++i) six += "nucleus a_z_hz=0 a_x_hz=1e3\n";
  const Result r = invoke({"simulate", write("six.sys", six), config("qpulsepol.seq"), "--out", dir_.string()});
  EXPECT_EQ(r.code, kDomainError);
  EXPECT_NE(r.err.find("exceeds 64"), std::string::npos) << r.err;
  EXPECT_EQ(invoke({"simulate", config("pair.sys"), config("qpulsepol.seq"), "--reset", "maybe"}).code,
            kInputError);
  EXPECT_EQ(invoke({"simulate", config("pair.sys"), config("qpulsepol.seq"), "--macro-cycle", "1e-9", "--out",
                    dir_.string()})
                .code,
            kDomainError);
  EXPECT_EQ(invoke({"simulate", config("relay_chain.sys"), config("qpulsepol.seq"), "--orientations", "0"}).code,
            kInputError);
}

TEST(CliBinary, ExitCodesFromProcess) {
  const std::string bin = FLOQDNP_CLI_BINARY;
  EXPECT_EQ(std::system((bin + " presets qpulsepol > /dev/null").c_str()), 0);
  const int unknown = std::system((bin + " presets xy8 2> /dev/null").c_str());
  EXPECT_TRUE(WIFEXITED(unknown));
  EXPECT_EQ(WEXITSTATUS(unknown), kInputError);
  const int domain = std::system((bin + " presets pulsepol --f 0.5 2> /dev/null").c_str());
  EXPECT_EQ(WEXITSTATUS(domain), kDomainError);
}

}  // namespace
}  // namespace floqdnp::cli
