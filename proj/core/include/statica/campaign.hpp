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
#include <functional>
#include <string>
#include <string_view>

#include "statica/hex.hpp"
#include "statica/leakage.hpp"
#include "statica/monitor.hpp"
#include "statica/snapshot.hpp"
#include "statica/trace_file.hpp"

namespace statica {

enum class Protection { kNone, kAsync, kPll };

std::string_view protection_name(Protection p);
Protection parse_protection(std::string_view name);

struct CampaignSpec {
  CipherId cipher = CipherId::kAes128;
  bool masked = false;
  Block key{};
  std::size_t n_traces = 1000;
  AcquisitionSpec acquisition;
  LeakageParams leakage;
  std::uint64_t seed = 1;
  Protection protection = Protection::kNone;
  MonitorConfig monitor;
  PllConfig pll;
  Picoseconds clock_period = 125'000;
  int stop_level = 0;
  // 0 selects 128 bits for AES and 64 for SKINNY.
  unsigned rng_bits_per_cycle = 0;
  std::string target;

  unsigned clear_bits_per_cycle() const;
  void validate() const;
};

// Seed of the Trivium instance that feeds the masked clears.
std::uint64_t campaign_clear_seed(const CampaignSpec& spec);

struct TraceObservation {
  std::size_t index;
  const Block& plaintext;
  const Block& ciphertext;
  const RegisterSnapshot& poi;       // contents at the stopped clock
  const RegisterSnapshot& measured;  // contents during the window
  const MonitorReport* monitor;      // null when unprotected
  double value;
};

using TraceObserver = std::function<void(const TraceObservation&)>;

// For each random plaintext: run the cipher to its point of interest, stop
// the clock, let the monitor act when one is configured, then measure.
// Burn-in traces only advance the drift. Single-threaded because drift
// couples consecutive traces.
TraceSet acquire_campaign(const CampaignSpec& spec,
                          const TraceObserver& observer = {});
TraceSet acquire_campaign(CipherId cipher, const Block& key,
                          std::size_t n_traces, const AcquisitionSpec& acq,
                          const LeakageParams& params, std::uint64_t seed,
                          bool masked = false);

}  // namespace statica
