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

#include "statica/scenario.hpp"

#include <cstdio>
#include <sstream>

#include "statica/aes.hpp"
#include "statica/config.hpp"
#include "statica/error.hpp"

namespace statica {

std::string_view scenario_kind_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kAsync:
      return "async";
    case ScenarioKind::kPll:
      return "pll";
    case ScenarioKind::kGlitch:
      return "glitch";
  }
  return "unknown";
}

namespace {

ScenarioKind parse_kind(const std::string& s, int line) {
  for (auto k : {ScenarioKind::kAsync, ScenarioKind::kPll,
                 ScenarioKind::kGlitch}) {
    if (scenario_kind_name(k) == s) return k;
  }
  throw ConfigError(line, "kind: expected async, pll or glitch, got '" + s + "'");
}

std::string join(const std::vector<Pulse>& pulses) {
  std::string out;
  for (const auto& p : pulses) {
    if (!out.empty()) out += ", ";
    out += std::to_string(p.start) + ":" + std::to_string(p.width);
  }
  return out;
}

std::vector<Pulse> parse_pulses(const std::string& s, int line) {
  std::vector<Pulse> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    long long start = 0, width = 0;
    char tail = 0;
    if (std::sscanf(item.c_str(), " %lld : %lld %c", &start, &width, &tail) !=
        2) {
      throw ConfigError(line, "glitches: expected start:width pairs");
    }
    out.push_back({start, width});
  }
  return out;
}

}  // namespace

Scenario Scenario::from_config(const ConfigFile& cfg) {
  Scenario s;
  if (!cfg.has_section("scenario")) {
    throw ConfigError(0, "missing [scenario] section");
  }
  s.name = cfg.get("scenario", "name").value_or(s.name);
  s.kind = parse_kind(cfg.require("scenario", "kind"),
                      cfg.line_of("scenario", "kind"));
  s.rng_seed = cfg.get_u64("scenario", "rng_seed", s.rng_seed);
  s.rng_bits_per_cycle = static_cast<unsigned>(
      cfg.get_u64("scenario", "rng_bits_per_cycle", s.rng_bits_per_cycle));
  if (cfg.has("scenario", "horizon")) {
    s.horizon = cfg.get_int("scenario", "horizon", 0);
  }

  const std::string mon_preset =
      cfg.get("monitor", "preset")
          .value_or(s.kind == ScenarioKind::kGlitch ? "dense" : "default");
  if (mon_preset == "dense") {
    s.monitor = dense_tap_monitor_config();
  } else if (mon_preset != "default") {
    throw ConfigError(cfg.line_of("monitor", "preset"),
                      "preset: expected default or dense");
  }
  auto& m = s.monitor;
  m.unit_delay = cfg.get_int("monitor", "unit_delay", m.unit_delay);
  m.tap_stride = static_cast<int>(cfg.get_int("monitor", "tap_stride", m.tap_stride));
  m.n_taps = static_cast<int>(cfg.get_int("monitor", "n_taps", m.n_taps));
  m.clk_delay = cfg.get_int("monitor", "clk_delay", m.clk_delay);
  m.t_m = cfg.get_int("monitor", "t_m", m.t_m);
  m.comb_delay = cfg.get_int("monitor", "comb_delay", m.comb_delay);
  m.delay_sigma = cfg.get_double("monitor", "delay_sigma", m.delay_sigma);
  m.delay_seed = cfg.get_u64("monitor", "delay_seed", m.delay_seed);
  try {
    m.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(cfg.section_line("monitor"), e.what());
  }

  s.pll.tolerance = cfg.get_double("pll", "tolerance", s.pll.tolerance);
  s.pll.lock_time = cfg.get_int("pll", "lock_time", s.pll.lock_time);
  s.pll.fallback_delay =
      cfg.get_int("pll", "fallback_delay", s.pll.fallback_delay);

  auto& c = s.clock;
  c.period = cfg.get_int("clock", "period", c.period);
  c.duty = cfg.get_double("clock", "duty", c.duty);
  c.start = cfg.get_int("clock", "start", c.start);
  c.cycles = static_cast<std::size_t>(cfg.get_u64("clock", "cycles", c.cycles));
  if (cfg.has("clock", "stop_at")) c.stop_at = cfg.get_int("clock", "stop_at", 0);
  c.stop_level = static_cast<int>(cfg.get_int("clock", "stop_level", c.stop_level));
  if (c.stop_level != 0 && c.stop_level != 1) {
    throw ConfigError(cfg.line_of("clock", "stop_level"),
                      "stop_level: expected 0 or 1");
  }
  c.jitter_ppm = cfg.get_double("clock", "jitter_ppm", c.jitter_ppm);
  c.jitter_seed = cfg.get_u64("clock", "jitter_seed", c.jitter_seed);
  if (auto g = cfg.get("clock", "glitches")) {
    c.glitches = parse_pulses(*g, cfg.line_of("clock", "glitches"));
  }
  if (cfg.has("clock", "restart_at")) {
    c.restart_at = cfg.get_int("clock", "restart_at", 0);
  }
  c.restart_cycles =
      static_cast<std::size_t>(cfg.get_u64("clock", "restart_cycles", 0));

  s.glitch.use_clk_delay =
      cfg.get_bool("glitch", "use_clk_delay", s.glitch.use_clk_delay);
  if (cfg.has("glitch", "pulse_width")) {
    s.glitch.pulse_width = cfg.get_int("glitch", "pulse_width", 0);
  }
  s.glitch.pulses =
      static_cast<std::size_t>(cfg.get_u64("glitch", "pulses", s.glitch.pulses));
  s.glitch.clock_period = c.period;

  cfg.reject_unused();
  try {
    if (s.kind != ScenarioKind::kGlitch) make_clock(s.clock);
  } catch (const InvalidArgument& e) {
    throw ConfigError(cfg.section_line("clock"), e.what());
  }
  return s;
}

Scenario Scenario::parse(std::string_view text) {
  return from_config(ConfigFile::parse(text));
}

Scenario Scenario::load(const std::filesystem::path& path) {
  return from_config(ConfigFile::load(path));
}

double Scenario::clock_frequency_hz() const {
  return 1e12 / static_cast<double>(clock.period);
}

std::string Scenario::serialize() const {
  std::ostringstream o;
  o.precision(17);
  o << "[scenario]\nname = " << name << "\nkind = " << scenario_kind_name(kind)
    << "\nrng_seed = " << rng_seed
    << "\nrng_bits_per_cycle = " << rng_bits_per_cycle << "\n";
  if (horizon) o << "horizon = " << *horizon << "\n";
  o << "\n[clock]\nperiod = " << clock.period << "\nduty = " << clock.duty
    << "\nstart = " << clock.start << "\ncycles = " << clock.cycles << "\n";
  if (clock.stop_at) o << "stop_at = " << *clock.stop_at << "\n";
  o << "stop_level = " << clock.stop_level
    << "\njitter_ppm = " << clock.jitter_ppm
    << "\njitter_seed = " << clock.jitter_seed << "\n";
  if (!clock.glitches.empty()) o << "glitches = " << join(clock.glitches) << "\n";
  if (clock.restart_at) {
    o << "restart_at = " << *clock.restart_at
      << "\nrestart_cycles = " << clock.restart_cycles << "\n";
  }
  o << "\n[monitor]\nunit_delay = " << monitor.unit_delay
    << "\ntap_stride = " << monitor.tap_stride
    << "\nn_taps = " << monitor.n_taps << "\nclk_delay = " << monitor.clk_delay
    << "\nt_m = " << monitor.t_m << "\ncomb_delay = " << monitor.comb_delay
    << "\ndelay_sigma = " << monitor.delay_sigma
    << "\ndelay_seed = " << monitor.delay_seed
    << "\n\n[pll]\ntolerance = " << pll.tolerance
    << "\nlock_time = " << pll.lock_time
    << "\nfallback_delay = " << pll.fallback_delay << "\n";
  if (kind == ScenarioKind::kGlitch) {
    o << "\n[glitch]\nuse_clk_delay = "
      << (glitch.use_clk_delay ? "true" : "false") << "\npulses = "
      << glitch.pulses << "\n";
    if (glitch.pulse_width) o << "pulse_width = " << *glitch.pulse_width << "\n";
  }
  return o.str();
}

ScenarioOutcome run_scenario(const Scenario& s) {
  ScenarioOutcome out;
  if (s.kind == ScenarioKind::kGlitch) {
    GlitchOptions g = s.glitch;
    g.clock_period = s.clock.period;
    out.report = run_glitch_scenario(s.monitor, g);
    out.aliasing_predicted = check_aliasing(s.monitor, s.clock_frequency_hz());
    return out;
  }
  const Block key = block_from_hex("000102030405060708090a0b0c0d0e0f");
  const Block pt = block_from_hex("00112233445566778899aabbccddeeff");
  const auto aes = aes_encrypt(key, pt);
  SnapshotDevice device(aes.trace);
  const Waveform clk = make_clock(s.clock);
  Trivium rng = Trivium::from_seed(s.rng_seed, s.rng_bits_per_cycle);
  MonitorRunOptions run;
  run.stop_time = clock_stop_time(s.clock, clk);
  run.horizon = s.horizon;
  if (s.kind == ScenarioKind::kAsync) {
    out.report = run_async_monitor(clk, s.monitor, &device, rng, run);
    out.aliasing_predicted = check_aliasing(s.monitor, s.clock_frequency_hz());
  } else {
    out.report = run_pll_monitor(clk, s.clock.period, &device, rng, s.pll, run);
  }
  return out;
}

}  // namespace statica
