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
#include <optional>
#include <string>
#include <vector>

#include "statica/snapshot.hpp"
#include "statica/trivium.hpp"
#include "statica/waveform.hpp"

namespace statica {

// Delay-chain clock monitor geometry. Taps sit on every tap_stride-th
// element starting with the chain input.
struct MonitorConfig {
  Picoseconds unit_delay = 190;
  int tap_stride = 66;
  int n_taps = 30;
  Picoseconds clk_delay = 2'000;
  Picoseconds t_m = 200'000;
  Picoseconds comb_delay = 1'000;
  // Per-element Gaussian delay error in ps, drawn once from delay_seed.
  double delay_sigma = 0.0;
  std::uint64_t delay_seed = 1;

  int chain_length() const { return tap_stride * (n_taps - 1) + 1; }
  Picoseconds t_n() const;
  Picoseconds min_tap_gap() const;
  std::vector<Picoseconds> tap_delays() const;
  // 1 / min_tap_gap in Hz.
  double sampling_frequency_hz() const;
  // Throws InvalidArgument for non-positive geometry, negative delays or a
  // negative delay_sigma.
  void validate() const;
  // clk_delay exceeds comb_delay, which closes the glitch bypass.
  bool glitch_safe() const { return clk_delay > comb_delay; }

  bool operator==(const MonitorConfig&) const = default;
};

// Same t_n as the default geometry with taps two elements apart, so any
// pulse wider than 380 ps is always visible to at least one tap.
MonitorConfig dense_tap_monitor_config();

struct PllConfig {
  double tolerance = 0.01;                // fraction of the nominal period
  Picoseconds lock_time = 100'000'000;    // 100 us
  Picoseconds fallback_delay = 10'000;    // internal oscillator edge

  bool operator==(const PllConfig&) const = default;
};

// Receiver of the monitored system clock.
class MonitoredDevice {
 public:
  virtual ~MonitoredDevice() = default;
  // Active edge with the data inputs selected (normal operation).
  virtual void clock_edge(Picoseconds t) = 0;
  // Active edge with the RNG selected; returns the bits written.
  virtual std::vector<std::uint8_t> masked_clear(Picoseconds t,
                                                 Trivium& rng) = 0;
  // Current register contents when the device exposes them.
  virtual const RegisterSnapshot* held() const { return nullptr; }
};

// Walks through a RoundTrace: the k-th normal edge loads snapshot k-1 and
// the device holds the last snapshot once the schedule is exhausted. A
// masked clear overwrites every sensitive register with share index <= 0.
class SnapshotDevice : public MonitoredDevice {
 public:
  explicit SnapshotDevice(const RoundTrace& trace);

  void clock_edge(Picoseconds t) override;
  std::vector<std::uint8_t> masked_clear(Picoseconds t, Trivium& rng) override;

  // -1 before the first edge.
  int cycle() const { return cycle_; }
  const RegisterSnapshot& current() const { return current_; }
  const RegisterSnapshot* held() const override { return &current_; }
  std::size_t normal_edges() const { return normal_edges_; }
  std::size_t clears() const { return clears_; }

 private:
  const RoundTrace* trace_;
  RegisterSnapshot current_;
  int cycle_ = -1;
  std::size_t normal_edges_ = 0;
  std::size_t clears_ = 0;
};

struct MonitorReport {
  std::optional<Picoseconds> stop_time;
  std::optional<Picoseconds> detect_time;
  std::optional<Picoseconds> clear_edge_time;
  std::vector<Picoseconds> false_positive_times;
  bool cleared_with_randomness = false;
  // Normal active edges the device received at or after the stop.
  std::vector<Picoseconds> post_stop_edges;
  // The device no longer holds the sensitive contents it held at the stop.
  bool poi_overwritten = false;
  // Bits written by the first clear.
  std::vector<std::uint8_t> clear_words;

  // The stop was detected but the device saw neither a clear nor an edge.
  bool bypassed() const {
    return detect_time && !cleared_with_randomness && post_stop_edges.empty();
  }

  // key=value lines; absent times are written as "none".
  std::string serialize() const;
  std::string false_positives_csv() const;
};

struct MonitorRunOptions {
  // Ground truth used to split alarms into detections and false positives.
  std::optional<Picoseconds> stop_time;
  // Events after the horizon are ignored. Defaults: for a stopped clock,
  // long enough to observe the clear; otherwise the last clock event.
  std::optional<Picoseconds> horizon;
  // When set, configurations with t_n <= period / 2 are rejected.
  std::optional<Picoseconds> nominal_period;
};

// Builds the full asynchronous network: delayed clock, tapped chain,
// stop_detect, delayed_edge and the clock multiplexer. `device` may be null.
MonitorReport run_async_monitor(const Waveform& clk, const MonitorConfig& cfg,
                                MonitoredDevice* device, Trivium& rng,
                                const MonitorRunOptions& opts = {});

// Lock monitor: the alarm asserts when no rising edge arrives within the
// nominal period plus tolerance. A fallback oscillator supplies the clear
// edge; after the reference resumes the PLL needs lock_time before edges
// reach the device again.
MonitorReport run_pll_monitor(const Waveform& clk, Picoseconds t_nominal,
                              MonitoredDevice* device, Trivium& rng,
                              const PllConfig& pll = {},
                              const MonitorRunOptions& opts = {});

struct GlitchOptions {
  bool use_clk_delay = true;
  // Defaults to halfway between the tap gap and comb_delay.
  std::optional<Picoseconds> pulse_width;
  std::size_t pulses = 8;
  Picoseconds clock_period = 125'000;
};

// Stops an 8 MHz clock low after the AES point-of-interest cycle and sends
// a pulse train timed so that stop_detect is low whenever delayed_edge is
// high. Without clk_delay the pulses never reach the device either. The
// horizon ends before the clear that follows the last pulse.
MonitorReport run_glitch_scenario(const MonitorConfig& cfg,
                                  const GlitchOptions& opts);
MonitorReport run_glitch_scenario(const MonitorConfig& cfg,
                                  bool use_clk_delay);

// True when the configuration is expected to raise false positives at
// f_clk: either f_clk >= f_s / 2 or t_n <= T_clk / 2.
bool check_aliasing(const MonitorConfig& cfg, double f_clk_hz);

}  // namespace statica
