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

#include <algorithm>

#include "statica/aes.hpp"
#include "statica/error.hpp"
#include "statica/monitor.hpp"

namespace statica {
namespace {

constexpr Picoseconds kT = 125'000;

struct StopRun {
  MonitorReport report;
  RegisterSnapshot held;
  Picoseconds stop;
};

StopRun stop_aes(int level, const MonitorConfig& cfg = {}) {
  const auto aes = aes_encrypt(block_from_hex("000102030405060708090a0b0c0d0e0f"),
                               block_from_hex("00112233445566778899aabbccddeeff"));
  SnapshotDevice device(aes.trace);
  ClockSpec spec;
  spec.period = kT;
  spec.stop_level = level;
  spec.stop_at = 9 * kT + (level ? kT / 4 : kT / 2);
  const Waveform clk = make_clock(spec);
  Trivium rng = Trivium::from_seed(1, 128);
  MonitorRunOptions opts;
  opts.stop_time = clock_stop_time(spec, clk);
  opts.nominal_period = kT;
  StopRun out{run_async_monitor(clk, cfg, &device, rng, opts), device.current(),
              *opts.stop_time};
  return out;
}

TEST(MonitorConfig, DefaultGeometry) {
  const MonitorConfig cfg;
  EXPECT_EQ(cfg.chain_length(), 1915);
  EXPECT_EQ(cfg.t_n(), 363'660);
  EXPECT_EQ(cfg.min_tap_gap(), 12'540);
  const auto taps = cfg.tap_delays();
  ASSERT_EQ(taps.size(), 30u);
  EXPECT_EQ(taps.front(), 0);
  EXPECT_EQ(taps.back(), cfg.t_n());
  EXPECT_TRUE(cfg.glitch_safe());
  const auto dense = dense_tap_monitor_config();
  EXPECT_EQ(dense.t_n(), cfg.t_n());
  EXPECT_LT(dense.min_tap_gap(), dense.comb_delay);
}

TEST(MonitorConfig, Validation) {
  MonitorConfig bad;
  bad.n_taps = 1;
  EXPECT_THROW(bad.validate(), InvalidArgument);
  bad = {};
  bad.unit_delay = 0;
  EXPECT_THROW(bad.validate(), InvalidArgument);
  bad = {};
  bad.t_m = -1;
  EXPECT_THROW(bad.validate(), InvalidArgument);
  bad = {};
  bad.delay_sigma = -1.0;
  EXPECT_THROW(bad.validate(), InvalidArgument);
}

TEST(MonitorConfig, PerturbedElementDelays) {
  MonitorConfig cfg;
  cfg.delay_sigma = 20.0;
  cfg.delay_seed = 9;
  const auto d = cfg.tap_delays();
  EXPECT_EQ(d, cfg.tap_delays());
  EXPECT_EQ(d.front(), 0);
  EXPECT_EQ(cfg.t_n(), d.back());
  EXPECT_NE(d, MonitorConfig{}.tap_delays());
  // 1914 elements: the sum stays within a few sigma * sqrt(n) of nominal.
  EXPECT_NEAR(static_cast<double>(cfg.t_n()), 363'660.0, 5 * 20.0 * 44.0);
  Picoseconds min_gap = d[1] - d[0];
  for (std::size_t i = 2; i < d.size(); ++i) min_gap = std::min(min_gap, d[i] - d[i - 1]);
  EXPECT_EQ(cfg.min_tap_gap(), min_gap);
  cfg.delay_seed = 10;
  EXPECT_NE(cfg.tap_delays(), d);
}

TEST(AsyncMonitor, PerturbedChainKeepsExactTiming) {
  MonitorConfig cfg;
  cfg.delay_sigma = 15.0;
  const auto r = stop_aes(0, cfg);
  ASSERT_TRUE(r.report.detect_time);
  EXPECT_EQ(*r.report.detect_time, r.stop + cfg.t_n() + cfg.comb_delay);
  EXPECT_EQ(*r.report.clear_edge_time, *r.report.detect_time + cfg.t_m);
  EXPECT_TRUE(r.report.false_positive_times.empty());
}

TEST(AsyncMonitor, StopLowTiming) {
  const MonitorConfig cfg;
  const auto r = stop_aes(0);
  ASSERT_TRUE(r.report.detect_time);
  ASSERT_TRUE(r.report.clear_edge_time);
  EXPECT_EQ(r.stop, 9 * kT + kT / 2);
  EXPECT_EQ(*r.report.detect_time, r.stop + cfg.t_n() + cfg.comb_delay);
  EXPECT_EQ(*r.report.clear_edge_time, *r.report.detect_time + cfg.t_m);
  EXPECT_LE(*r.report.clear_edge_time - r.stop, 1'000'000);
  EXPECT_TRUE(r.report.false_positive_times.empty());
  EXPECT_TRUE(r.report.cleared_with_randomness);
  EXPECT_TRUE(r.report.poi_overwritten);
  EXPECT_TRUE(r.report.post_stop_edges.empty());
  EXPECT_FALSE(r.report.bypassed());
}

TEST(AsyncMonitor, StopHighIsSymmetric) {
  const MonitorConfig cfg;
  const auto lo = stop_aes(0);
  const auto hi = stop_aes(1);
  EXPECT_EQ(hi.stop, 9 * kT);
  EXPECT_EQ(*hi.report.detect_time - hi.stop, *lo.report.detect_time - lo.stop);
  EXPECT_EQ(*hi.report.clear_edge_time - hi.stop,
            *lo.report.clear_edge_time - lo.stop);
  EXPECT_TRUE(hi.report.cleared_with_randomness);
  // The final rising edge is the stop itself, not a post-stop edge.
  EXPECT_TRUE(hi.report.post_stop_edges.empty());
  EXPECT_TRUE(hi.report.poi_overwritten);
}

TEST(AsyncMonitor, ClearWritesTheRngWords) {
  const auto r = stop_aes(0);
  const auto* state = r.held.find("state");
  ASSERT_NE(state, nullptr);
  ASSERT_EQ(r.report.clear_words.size(), 16u);
  EXPECT_EQ(state->bytes, r.report.clear_words);
  Trivium fresh = Trivium::from_seed(1, 128);
  EXPECT_EQ(r.report.clear_words, fresh.next_bits(128));
  // The round key register is not sensitive and is left alone.
  const auto aes = aes_encrypt(block_from_hex("000102030405060708090a0b0c0d0e0f"),
                               block_from_hex("00112233445566778899aabbccddeeff"));
  EXPECT_EQ(*r.held.find("key"), *aes.trace.snapshots[kAesPoiCycle].find("key"));
}

TEST(AsyncMonitor, RejectsShortChain) {
  MonitorConfig cfg;
  cfg.n_taps = 5;  // t_n = 4 * 66 * 190 < T/2
  EXPECT_THROW(stop_aes(0, cfg), InvalidArgument);
}

TEST(AsyncMonitor, HealthyJitteredClockHasNoFalsePositives) {
  for (double mhz : {2.6, 8.0, 25.0, 39.5}) {
    ClockSpec spec;
    spec.period = static_cast<Picoseconds>(1e6 / mhz);
    spec.cycles = 20000;
    spec.jitter_ppm = 1000;
    spec.jitter_seed = 3;
    const Waveform clk = make_clock(spec);
    Trivium rng = Trivium::from_seed(1);
    const MonitorConfig cfg;
    ASSERT_FALSE(check_aliasing(cfg, mhz * 1e6));
    const auto r = run_async_monitor(clk, cfg, nullptr, rng);
    EXPECT_TRUE(r.false_positive_times.empty()) << mhz << " MHz";
  }
}

TEST(AsyncMonitor, SamplingAtClockRateRaisesFalsePositive) {
  const MonitorConfig cfg;
  ClockSpec spec;
  spec.period = cfg.min_tap_gap();
  spec.cycles = 5000;
  const Waveform clk = make_clock(spec);
  Trivium rng = Trivium::from_seed(1);
  const double f = 1e12 / static_cast<double>(spec.period);
  EXPECT_TRUE(check_aliasing(cfg, f));
  const auto r = run_async_monitor(clk, cfg, nullptr, rng);
  EXPECT_FALSE(r.false_positive_times.empty());
}

TEST(AsyncMonitor, CheckAliasingRules) {
  const MonitorConfig cfg;
  EXPECT_FALSE(check_aliasing(cfg, 8e6));
  EXPECT_TRUE(check_aliasing(cfg, cfg.sampling_frequency_hz() / 2));
  // t_n <= T/2 below about 1.375 MHz.
  EXPECT_TRUE(check_aliasing(cfg, 1e6));
  EXPECT_THROW(check_aliasing(cfg, 0.0), InvalidArgument);
}

TEST(PllMonitor, StopTriggersFallbackClear) {
  const auto aes = aes_encrypt(Block{}, Block{});
  SnapshotDevice device(aes.trace);
  ClockSpec spec;
  spec.period = kT;
  spec.stop_at = 9 * kT + kT / 2;
  const Waveform clk = make_clock(spec);
  Trivium rng = Trivium::from_seed(2, 128);
  MonitorRunOptions opts;
  opts.stop_time = clock_stop_time(spec, clk);
  const PllConfig pll;
  const auto r = run_pll_monitor(clk, kT, &device, rng, pll, opts);
  ASSERT_TRUE(r.detect_time);
  const Picoseconds window = kT + static_cast<Picoseconds>(pll.tolerance * kT);
  EXPECT_EQ(*r.detect_time, 9 * kT + window);
  EXPECT_EQ(*r.clear_edge_time, *r.detect_time + pll.fallback_delay);
  EXPECT_TRUE(r.cleared_with_randomness);
  EXPECT_TRUE(r.false_positive_times.empty());
  EXPECT_EQ(device.current().find("state")->bytes, r.clear_words);
}

TEST(PllMonitor, HealthyClockAndRelock) {
  ClockSpec spec;
  spec.period = kT;
  spec.cycles = 5000;
  spec.jitter_ppm = 1000;
  const Waveform clk = make_clock(spec);
  Trivium rng = Trivium::from_seed(2);
  EXPECT_TRUE(run_pll_monitor(clk, kT, nullptr, rng).false_positive_times.empty());

  // Stop, then resume: edges are withheld until the PLL relocks.
  const auto aes = aes_encrypt(Block{}, Block{});
  SnapshotDevice device(aes.trace);
  ClockSpec resume;
  resume.period = kT;
  resume.stop_at = 9 * kT + kT / 2;
  resume.restart_at = 20 * kT;
  resume.restart_cycles = 1000;
  const Waveform clk2 = make_clock(resume);
  MonitorRunOptions opts;
  opts.stop_time = clock_stop_time(resume, clk2);
  const PllConfig pll;
  const auto r = run_pll_monitor(clk2, kT, &device, rng, pll, opts);
  ASSERT_FALSE(r.post_stop_edges.empty());
  EXPECT_GE(r.post_stop_edges.front(), 20 * kT + pll.lock_time);
}

TEST(GlitchScenario, BypassWithoutClkDelay) {
  const auto r = run_glitch_scenario(dense_tap_monitor_config(), false);
  ASSERT_TRUE(r.detect_time);
  EXPECT_FALSE(r.cleared_with_randomness);
  EXPECT_TRUE(r.post_stop_edges.empty());
  EXPECT_FALSE(r.poi_overwritten);
  EXPECT_TRUE(r.bypassed());
}

TEST(GlitchScenario, ClkDelayClosesTheBypass) {
  const auto r = run_glitch_scenario(dense_tap_monitor_config(), true);
  ASSERT_TRUE(r.detect_time);
  EXPECT_FALSE(r.bypassed());
  // The pulses now reach the device as ordinary edges and move it off the
  // point of interest.
  EXPECT_FALSE(r.post_stop_edges.empty());
  EXPECT_TRUE(r.poi_overwritten);
}

TEST(GlitchScenario, NeedsVisiblePulses) {
  EXPECT_THROW(run_glitch_scenario(MonitorConfig{}, false), InvalidArgument);
}

TEST(MonitorReport, Serialization) {
  MonitorReport r;
  r.stop_time = 10;
  r.detect_time = 20;
  r.false_positive_times = {3, 7};
  const auto text = r.serialize();
  EXPECT_NE(text.find("stop_time=10\n"), std::string::npos);
  EXPECT_NE(text.find("clear_edge_time=none\n"), std::string::npos);
  EXPECT_NE(text.find("detect_latency=10\n"), std::string::npos);
  EXPECT_EQ(r.false_positives_csv(), "index,time_ps\n0,3\n1,7\n");
}

}  // namespace
}  // namespace statica
