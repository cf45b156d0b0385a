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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "statica/monitor.hpp"
#include "statica/waveform.hpp"

namespace statica {

class ConfigFile;

enum class ScenarioKind { kAsync, kPll, kGlitch };

std::string_view scenario_kind_name(ScenarioKind kind);

// A monitor test bench: clock schedule plus the monitor under test. The
// device is an AES core walking through its rounds.
struct Scenario {
  std::string name = "scenario";
  ScenarioKind kind = ScenarioKind::kAsync;
  ClockSpec clock;
  MonitorConfig monitor;
  PllConfig pll;
  GlitchOptions glitch;
  std::optional<Picoseconds> horizon;
  std::uint64_t rng_seed = 0x5eed;
  unsigned rng_bits_per_cycle = 128;

  // Throws ConfigError with line numbers.
  static Scenario parse(std::string_view text);
  static Scenario from_config(const ConfigFile& cfg);
  static Scenario load(const std::filesystem::path& path);
  std::string serialize() const;
  double clock_frequency_hz() const;
};

struct ScenarioOutcome {
  MonitorReport report;
  // check_aliasing for the scenario clock; async monitors only.
  std::optional<bool> aliasing_predicted;
};

ScenarioOutcome run_scenario(const Scenario& s);

}  // namespace statica
