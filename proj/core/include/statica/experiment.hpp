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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "statica/campaign.hpp"
#include "statica/cpa.hpp"
#include "statica/scenario.hpp"

namespace statica {

enum class Target {
  kAesUnprotected,
  kAesBtAsync,
  kAesBtPll,
  kSkinnyMasked,
  kSkinnyMaskedBtAsync,
  kSkinnyMaskedBtPll,
};

std::string_view target_name(Target t);
Target parse_target(std::string_view name);

enum class AttackOrder { kCpa1, kCpa2 };

struct ExperimentConfig {
  Target target = Target::kAesUnprotected;
  Block key{};
  std::uint64_t seed = 1;
  std::size_t traces = 5000;

  LeakageParams leakage;
  AcquisitionSpec acquisition;
  // Present iff the target is protected by the matching monitor.
  std::optional<MonitorConfig> monitor;
  std::optional<PllConfig> pll;
  Picoseconds clock_period = 125'000;
  int stop_level = 0;
  unsigned rng_bits_per_cycle = 0;

  AttackOrder attack = AttackOrder::kCpa1;
  // "default", "fine" or an explicit list.
  std::string checkpoint_grid = "default";
  std::vector<std::size_t> checkpoints;
  int half_window = 50;

  std::vector<double> sweep_offsets;
  std::size_t sweep_workers = 0;  // 0: one per hardware thread

  std::string trace_file = "traces.bttr";
  std::string trace_csv;  // empty: no CSV export
  std::string result_file = "cpa.csv";
  std::string sweep_file = "sweep.csv";
  std::vector<std::string> report_inputs;
  std::string report_dir = "report";

  // Throws ConfigError with the offending line.
  static ExperimentConfig parse(std::string_view text);
  static ExperimentConfig load(const std::filesystem::path& path);

  CipherId cipher() const;
  bool masked() const;
  Protection protection() const;
  CampaignSpec campaign() const;
  AttackKind attack_kind() const;
  // Checkpoints resolved against a trace count.
  std::vector<std::size_t> resolved_checkpoints(std::size_t n) const;
  // Key bytes the attack recovers: last round key for AES, round-2 subkey
  // for SKINNY.
  std::vector<std::uint8_t> attacked_key() const;
};

struct SimulateSummary {
  std::filesystem::path trace_path;
  std::size_t n = 0;
  std::uint64_t params_digest = 0;
  // Protected targets: clears whose written bits match the RNG words.
  std::size_t clears_verified = 0;
  std::size_t clears_missing = 0;
};

SimulateSummary cmd_simulate(const ExperimentConfig& cfg,
                             const std::filesystem::path& out_dir,
                             std::ostream& log);

// Attacks `trace_path`, or the configured trace file inside `out_dir`.
CpaResult cmd_attack(const ExperimentConfig& cfg,
                     const std::filesystem::path& out_dir, std::ostream& log,
                     const std::optional<std::filesystem::path>& trace_path = {});

struct SweepPoint {
  double offset = 0.0;
  std::optional<std::size_t> mtd;
};

// One campaign and attack per offset, all with the configured seed. Results
// are in offset order whatever the worker count.
std::vector<SweepPoint> run_offset_sweep(const ExperimentConfig& cfg);
std::vector<SweepPoint> cmd_sweep_offset(const ExperimentConfig& cfg,
                                         const std::filesystem::path& out_dir,
                                         std::ostream& log);

ScenarioOutcome cmd_monitor_test(const Scenario& scenario,
                                 const std::filesystem::path& out_dir,
                                 std::ostream& log);

// Turns CPA result CSVs and sweep CSVs into plot-ready series. Returns the
// files written.
std::vector<std::filesystem::path> cmd_report(
    const std::vector<std::filesystem::path>& inputs,
    const std::filesystem::path& out_dir, std::ostream& log);

void write_sweep_csv(const std::vector<SweepPoint>& points,
                     const std::filesystem::path& path);
std::vector<SweepPoint> read_sweep_csv(const std::filesystem::path& path);

}  // namespace statica
