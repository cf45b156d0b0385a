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

#include "statica/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "statica/error.hpp"
#include "statica/hex.hpp"
#include "statica/aes.hpp"
#include "statica/random.hpp"

namespace statica {

Picoseconds MonitorConfig::t_n() const {
  if (delay_sigma == 0.0) return unit_delay * tap_stride * (n_taps - 1);
  return tap_delays().back();
}

Picoseconds MonitorConfig::min_tap_gap() const {
  if (delay_sigma == 0.0) return unit_delay * tap_stride;
  const auto d = tap_delays();
  Picoseconds gap = d[1] - d[0];
  for (std::size_t i = 2; i < d.size(); ++i) gap = std::min(gap, d[i] - d[i - 1]);
  return gap;
}

std::vector<Picoseconds> MonitorConfig::tap_delays() const {
  std::vector<Picoseconds> d(n_taps);
  if (delay_sigma == 0.0) {
    for (int i = 0; i < n_taps; ++i) d[i] = unit_delay * tap_stride * i;
    return d;
  }
  // Each element keeps its own delay, quantized and never negative.
  Rng rng(delay_seed);
  Picoseconds t = 0;
  for (int i = 1; i < n_taps; ++i) {
    for (int e = 0; e < tap_stride; ++e) {
      const double el = static_cast<double>(unit_delay) + delay_sigma * rng.normal();
      t += std::max<Picoseconds>(0, std::llround(el));
    }
    d[i] = t;
  }
  return d;
}

double MonitorConfig::sampling_frequency_hz() const {
  return 1e12 / static_cast<double>(min_tap_gap());
}

void MonitorConfig::validate() const {
  if (unit_delay <= 0) throw InvalidArgument("unit_delay must be positive");
  if (tap_stride <= 0) throw InvalidArgument("tap_stride must be positive");
  if (n_taps < 2) throw InvalidArgument("n_taps must be at least 2");
  if (clk_delay < 0 || t_m <= 0 || comb_delay < 0) {
    throw InvalidArgument("monitor delays must be non-negative, t_m positive");
  }
  if (!(delay_sigma >= 0.0) || !std::isfinite(delay_sigma)) {
    throw InvalidArgument("delay_sigma must be finite and non-negative");
  }
}

MonitorConfig dense_tap_monitor_config() {
  MonitorConfig cfg;
  cfg.tap_stride = 2;
  cfg.n_taps = 958;
  return cfg;
}

SnapshotDevice::SnapshotDevice(const RoundTrace& trace) : trace_(&trace) {
  if (!trace.snapshots.empty()) {
    // Before the first edge the registers hold zeros.
    current_ = trace.snapshots.front();
    for (auto& r : current_.registers) {
      std::fill(r.bytes.begin(), r.bytes.end(), 0);
    }
  }
}

void SnapshotDevice::clock_edge(Picoseconds) {
  ++normal_edges_;
  const int last = static_cast<int>(trace_->snapshots.size()) - 1;
  if (cycle_ < last) ++cycle_;
  if (cycle_ >= 0) current_ = trace_->snapshots[cycle_];
}

std::vector<std::uint8_t> SnapshotDevice::masked_clear(Picoseconds,
                                                       Trivium& rng) {
  ++clears_;
  std::size_t bytes = 0;
  for (const auto& r : current_.registers) {
    if (r.sensitive && r.share_index <= 0) bytes += r.bytes.size();
  }
  std::vector<std::uint8_t> words(bytes);
  rng.fill(words);
  std::size_t pos = 0;
  for (auto& r : current_.registers) {
    if (!r.sensitive || r.share_index > 0) continue;
    for (auto& b : r.bytes) b = words[pos++];
  }
  return words;
}

namespace {

std::string opt_time(const std::optional<Picoseconds>& t) {
  return t ? std::to_string(*t) : "none";
}

bool differs(const RegisterSnapshot& a, const RegisterSnapshot& b) {
  return sensitive_hamming_distance(a, b) != 0;
}

// Routes device edges in time order and collects the report fields that
// depend on the device.
class EdgeRouter {
 public:
  EdgeRouter(MonitoredDevice* device, Trivium& rng, MonitorReport& report)
      : device_(device), rng_(rng), report_(report) {}

  // `source` is the live clock edge behind `t`. With a stop-high clock the
  // final rising edge is the stop itself and still belongs to normal
  // operation.
  void normal(Picoseconds t, Picoseconds source) {
    if (report_.stop_time && source > *report_.stop_time) {
      capture();
      report_.post_stop_edges.push_back(t);
    }
    if (device_) device_->clock_edge(t);
  }

  void clear(Picoseconds t) {
    if (report_.stop_time && t >= *report_.stop_time) capture();
    std::vector<std::uint8_t> words;
    if (device_) words = device_->masked_clear(t, rng_);
    bool counts = !report_.stop_time || t >= *report_.stop_time;
    if (counts && !report_.cleared_with_randomness) {
      report_.cleared_with_randomness = true;
      report_.clear_edge_time = t;
      report_.clear_words = std::move(words);
    }
  }

  void finish() {
    if (at_stop_ && device_ && device_->held()) {
      report_.poi_overwritten = differs(*at_stop_, *device_->held());
    }
  }

 private:
  void capture() {
    if (captured_) return;
    captured_ = true;
    if (device_ && device_->held()) at_stop_ = *device_->held();
  }

  MonitoredDevice* device_;
  Trivium& rng_;
  MonitorReport& report_;
  bool captured_ = false;
  std::optional<RegisterSnapshot> at_stop_;
};

}  // namespace

std::string MonitorReport::serialize() const {
  std::ostringstream os;
  os << "stop_time=" << opt_time(stop_time) << "\n";
  os << "detect_time=" << opt_time(detect_time) << "\n";
  os << "clear_edge_time=" << opt_time(clear_edge_time) << "\n";
  os << "detect_latency="
     << (stop_time && detect_time ? std::to_string(*detect_time - *stop_time)
                                  : "none")
     << "\n";
  os << "clear_latency="
     << (detect_time && clear_edge_time
             ? std::to_string(*clear_edge_time - *detect_time)
             : "none")
     << "\n";
  os << "false_positives=" << false_positive_times.size() << "\n";
  os << "cleared_with_randomness=" << (cleared_with_randomness ? "true" : "false")
     << "\n";
  os << "device_edges_after_stop=" << post_stop_edges.size() << "\n";
  os << "poi_overwritten=" << (poi_overwritten ? "true" : "false") << "\n";
  os << "bypass=" << (bypassed() ? "true" : "false") << "\n";
  os << "clear_words=" << (clear_words.empty() ? "none" : to_hex(clear_words))
     << "\n";
  return os.str();
}

std::string MonitorReport::false_positives_csv() const {
  std::ostringstream os;
  os << "index,time_ps\n";
  for (std::size_t i = 0; i < false_positive_times.size(); ++i) {
    os << i << "," << false_positive_times[i] << "\n";
  }
  return os.str();
}

MonitorReport run_async_monitor(const Waveform& clk, const MonitorConfig& cfg,
                                MonitoredDevice* device, Trivium& rng,
                                const MonitorRunOptions& opts) {
  cfg.validate();
  if (opts.nominal_period && cfg.t_n() <= *opts.nominal_period / 2) {
    throw InvalidArgument("t_n = " + std::to_string(cfg.t_n()) +
                          " ps does not exceed half the clock period (" +
                          std::to_string(*opts.nominal_period / 2) + " ps)");
  }
  std::vector<TapView> taps;
  for (Picoseconds d : cfg.tap_delays()) taps.push_back({&clk, d});
  const Waveform sd = stop_detect(std::span<const TapView>(taps), cfg.comb_delay);
  const Waveform delayed_edge = delay(sd, cfg.t_m);
  const Waveform sys_clk = mux(delay(clk, cfg.clk_delay), delayed_edge, sd);

  MonitorReport report;
  report.stop_time = opts.stop_time;
  const Picoseconds last = clk.last_event_time().value_or(0);
  const Picoseconds horizon =
      opts.horizon ? *opts.horizon
      : opts.stop_time
          ? last + cfg.t_n() + cfg.comb_delay + cfg.t_m + cfg.clk_delay + 1
          : last;

  for (const auto& e : sd.events()) {
    if (e.time > horizon) break;
    if (e.level != 1) continue;
    if (opts.stop_time && e.time >= *opts.stop_time) {
      if (!report.detect_time) report.detect_time = e.time;
    } else {
      report.false_positive_times.push_back(e.time);
    }
  }

  EdgeRouter router(device, rng, report);
  for (const auto& e : sys_clk.events()) {
    if (e.time > horizon) break;
    if (e.level != 1) continue;
    // The data multiplexer shares the select line with the clock mux.
    if (sd.level_at(e.time)) {
      router.clear(e.time);
    } else {
      router.normal(e.time, e.time - cfg.clk_delay);
    }
  }
  router.finish();
  return report;
}

MonitorReport run_pll_monitor(const Waveform& clk, Picoseconds t_nominal,
                              MonitoredDevice* device, Trivium& rng,
                              const PllConfig& pll,
                              const MonitorRunOptions& opts) {
  if (t_nominal <= 0) throw InvalidArgument("nominal period must be positive");
  if (pll.tolerance < 0.0 || pll.lock_time < 0 || pll.fallback_delay < 0) {
    throw InvalidArgument("PLL tolerance and delays must be non-negative");
  }
  MonitorReport report;
  report.stop_time = opts.stop_time;
  const auto window =
      t_nominal + static_cast<Picoseconds>(pll.tolerance * t_nominal);
  const Picoseconds last = clk.last_event_time().value_or(0);
  const Picoseconds horizon =
      opts.horizon ? *opts.horizon
      : opts.stop_time ? last + 2 * window + pll.fallback_delay + 1
                       : last;

  EdgeRouter router(device, rng, report);
  auto alarm = [&](Picoseconds a) {
    if (opts.stop_time && a >= *opts.stop_time) {
      if (!report.detect_time) report.detect_time = a;
    } else {
      report.false_positive_times.push_back(a);
    }
    Picoseconds edge = a + pll.fallback_delay;
    if (edge <= horizon) router.clear(edge);
  };

  bool locked = true;
  std::optional<Picoseconds> prev;
  std::optional<Picoseconds> relock_at;
  for (Picoseconds t : clk.rising_edges()) {
    if (t > horizon) break;
    if (locked) {
      if (prev && t > *prev + window) {
        alarm(*prev + window);
        locked = false;
        relock_at = t + pll.lock_time;
      } else {
        router.normal(t, t);
        prev = t;
        continue;
      }
    }
    if (t >= *relock_at) {
      locked = true;
      relock_at.reset();
      router.normal(t, t);
      prev = t;
    }
  }
  if (locked && prev && *prev + window <= horizon) alarm(*prev + window);
  router.finish();
  return report;
}

MonitorReport run_glitch_scenario(const MonitorConfig& cfg,
                                  const GlitchOptions& opts) {
  cfg.validate();
  MonitorConfig net = cfg;
  if (opts.use_clk_delay) {
    if (!cfg.glitch_safe()) net.clk_delay = 2 * cfg.comb_delay;
  } else {
    net.clk_delay = 0;
  }
  Picoseconds width;
  if (opts.pulse_width) {
    width = *opts.pulse_width;
  } else {
    if (cfg.min_tap_gap() >= cfg.comb_delay) {
      throw InvalidArgument(
          "glitch scenario needs a tap gap below comb_delay so that a pulse "
          "narrower than comb_delay stays visible along the chain");
    }
    width = (cfg.min_tap_gap() + cfg.comb_delay) / 2;
  }
  if (opts.pulses == 0) throw InvalidArgument("glitch scenario needs pulses");

  const Block key = block_from_hex("000102030405060708090a0b0c0d0e0f");
  const Block pt = block_from_hex("00112233445566778899aabbccddeeff");
  const auto aes = aes_encrypt(key, pt);
  SnapshotDevice device(aes.trace);

  const Picoseconds period = opts.clock_period;
  const Picoseconds stop = static_cast<Picoseconds>(kAesPoiCycle) * period +
                           period / 2;
  const Picoseconds detect = stop + net.t_n() + net.comb_delay;
  const Picoseconds spacing = net.t_n() + width + net.comb_delay + net.t_m / 2;
  ClockSpec spec;
  spec.period = period;
  spec.stop_at = stop;
  spec.stop_level = 0;
  for (std::size_t j = 0; j < opts.pulses; ++j) {
    spec.glitches.push_back(
        {detect + net.t_m / 2 + static_cast<Picoseconds>(j) * spacing, width});
  }
  const Waveform clk = make_clock(spec);
  Trivium rng = Trivium::from_seed(0x5eed, 128);
  MonitorRunOptions run;
  run.stop_time = clock_stop_time(spec, clk);
  run.horizon = spec.glitches.back().start + spacing - 1;
  run.nominal_period = period;
  return run_async_monitor(clk, net, &device, rng, run);
}

MonitorReport run_glitch_scenario(const MonitorConfig& cfg,
                                  bool use_clk_delay) {
  GlitchOptions opts;
  opts.use_clk_delay = use_clk_delay;
  return run_glitch_scenario(cfg, opts);
}

bool check_aliasing(const MonitorConfig& cfg, double f_clk_hz) {
  if (!(f_clk_hz > 0.0)) throw InvalidArgument("f_clk must be positive");
  const double half_period_ps = 0.5e12 / f_clk_hz;
  return f_clk_hz >= cfg.sampling_frequency_hz() / 2.0 ||
         static_cast<double>(cfg.t_n()) <= half_period_ps;
}

}  // namespace statica
