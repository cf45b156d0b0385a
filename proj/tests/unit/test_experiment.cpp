// Copyright 2026 The Statica Authors
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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "statica/aes.hpp"
#include "statica/error.hpp"
#include "statica/experiment.hpp"

namespace statica {
namespace {

namespace fs = std::filesystem;

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("statica_exp_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

const char* kNoiseless =
    "[experiment]\n"
    "target = aes_unprotected\n"
    "key = 2b7e151628aed2a6abf7158809cf4f3c\n"
    "seed = 3\n"
    "traces = 1000\n"
    "[leakage]\n"
    "sigma_noise = 0\n"
    "mem_gamma = 0\n"
    "drift_step = 0\n";

TEST(Experiment, SimulateRoundTripAndDeterminism) {
  auto cfg = ExperimentConfig::parse(kNoiseless);
  cfg.traces = 10;
  const auto dir = fresh_dir("simulate");
  std::ostringstream log;
  const auto sum = cmd_simulate(cfg, dir, log);
  EXPECT_EQ(sum.n, 10u);
  EXPECT_NE(log.str().find("n=10 seed=3 params_digest="), std::string::npos);
  const auto first = slurp(sum.trace_path);
  const auto ts = read_bttr(sum.trace_path);
  EXPECT_EQ(ts.size(), 10u);
  EXPECT_EQ(encode_bttr(ts), first);
  cmd_simulate(cfg, dir, log);
  EXPECT_EQ(slurp(sum.trace_path), first);
}

TEST(Experiment, AttackRecoversNoiselessKey) {
  const auto cfg = ExperimentConfig::parse(kNoiseless);
  const auto dir = fresh_dir("attack");
  std::ostringstream log;
  cmd_simulate(cfg, dir, log);
  const auto r = cmd_attack(cfg, dir, log);
  EXPECT_EQ(r.best_guess(), cfg.attacked_key());
  EXPECT_NE(log.str().find("master_key=2b7e151628aed2a6abf7158809cf4f3c"),
            std::string::npos);
  EXPECT_TRUE(fs::exists(dir / cfg.result_file));
}

TEST(Experiment, AttackErrors) {
  const auto cfg = ExperimentConfig::parse(kNoiseless);
  const auto dir = fresh_dir("attack_errors");
  std::ostringstream log;
  auto small = cfg;
  small.traces = 300;
  const auto sum = cmd_simulate(small, dir, log);
  // Truncated file.
  const auto bytes = slurp(sum.trace_path);
  std::ofstream(dir / "cut.bttr", std::ios::binary)
      << bytes.substr(0, bytes.size() - 5);
  EXPECT_THROW(cmd_attack(cfg, dir, log, dir / "cut.bttr"), FormatError);
  // Cipher and attack disagree.
  auto skinny = ExperimentConfig::parse(
      "[experiment]\ntarget = skinny_masked\n"
      "key = 2b7e151628aed2a6abf7158809cf4f3c\n");
  EXPECT_THROW(cmd_attack(skinny, dir, log, sum.trace_path), InvalidArgument);
}

TEST(Experiment, SweepIsIndependentOfWorkerCount) {
  auto cfg = ExperimentConfig::parse(kNoiseless);
  cfg.traces = 600;
  cfg.leakage.mem_gamma = 5.0;
  cfg.sweep_offsets = {1, 10, 100};
  cfg.sweep_workers = 1;
  const auto one = run_offset_sweep(cfg);
  cfg.sweep_workers = 3;
  const auto three = run_offset_sweep(cfg);
  ASSERT_EQ(one.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(one[i].offset, cfg.sweep_offsets[i]);
    EXPECT_EQ(one[i].offset, three[i].offset);
    EXPECT_EQ(one[i].mtd, three[i].mtd);
  }
  cfg.sweep_offsets = {5};
  EXPECT_THROW(run_offset_sweep(cfg), InvalidArgument);
}

TEST(Experiment, SweepCsvRoundTrip) {
  const auto dir = fresh_dir("sweep_csv");
  const std::vector<SweepPoint> pts = {{0.5, std::nullopt}, {250, 1500}};
  write_sweep_csv(pts, dir / "s.csv");
  const auto back = read_sweep_csv(dir / "s.csv");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].offset, 0.5);
  EXPECT_FALSE(back[0].mtd);
  EXPECT_EQ(back[1].mtd, 1500u);
}

TEST(Experiment, MonitorTestWritesReports) {
  const auto dir = fresh_dir("monitor");
  const auto s = Scenario::parse(
      "[scenario]\nname = lowstop\nkind = async\n[clock]\nperiod = 125000\n"
      "stop_at = 1187500\n");
  std::ostringstream log;
  const auto out = cmd_monitor_test(s, dir, log);
  ASSERT_TRUE(out.report.detect_time);
  const auto text = slurp(dir / "lowstop_report.txt");
  EXPECT_NE(text.find("detect_latency=364660\n"), std::string::npos);
  EXPECT_NE(text.find("clear_latency=200000\n"), std::string::npos);
  EXPECT_NE(text.find("bypassed=false\n"), std::string::npos);
  EXPECT_EQ(slurp(dir / "lowstop_false_positives.csv"), "index,time_ps\n");
}

TEST(Experiment, ReportHighlightsTrueKeyAndIsDeterministic) {
  const auto cfg = ExperimentConfig::parse(kNoiseless);
  const auto dir = fresh_dir("report");
  std::ostringstream log;
  cmd_simulate(cfg, dir, log);
  const auto r = cmd_attack(cfg, dir, log);
  const std::vector<fs::path> inputs = {dir / cfg.result_file};
  const auto files = cmd_report(inputs, dir / "a", log);
  cmd_report(inputs, dir / "b", log);
  for (const auto& f : files) {
    EXPECT_EQ(slurp(f), slurp(dir / "b" / f.filename())) << f;
  }
  // Every highlighted row carries the true key byte, which is also the
  // rank-1 guess at the last checkpoint.
  std::ifstream series(dir / "a" / "cpa_corr_series.csv");
  std::string line;
  std::getline(series, line);
  EXPECT_EQ(line, "traces,byte,guess,abs_corr,highlight");
  const auto key = cfg.attacked_key();
  int highlighted = 0;
  while (std::getline(series, line)) {
    std::stringstream ss(line);
    std::string traces, byte, guess, corr, hl;
    std::getline(ss, traces, ',');
    std::getline(ss, byte, ',');
    std::getline(ss, guess, ',');
    std::getline(ss, corr, ',');
    std::getline(ss, hl, ',');
    if (hl == "1") {
      ++highlighted;
      EXPECT_EQ(std::stoi(guess), key[std::stoi(byte)]);
    }
  }
  EXPECT_EQ(highlighted, static_cast<int>(16 * r.checkpoints.size()));
  const auto summary = slurp(dir / "a" / "cpa_summary.csv");
  EXPECT_NE(summary.find("0,d0,d0,1,"), std::string::npos);
  EXPECT_THROW(cmd_report({}, dir / "c", log), InvalidArgument);
}

}  // namespace
}  // namespace statica
