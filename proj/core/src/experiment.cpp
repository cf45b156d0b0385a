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

#include "statica/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "statica/aes.hpp"
#include "statica/config.hpp"
#include "statica/error.hpp"
#include "statica/skinny.hpp"

namespace statica {

namespace fs = std::filesystem;

std::string_view target_name(Target t) {
  switch (t) {
    case Target::kAesUnprotected:
      return "aes_unprotected";
    case Target::kAesBtAsync:
      return "aes_bt_async";
    case Target::kAesBtPll:
      return "aes_bt_pll";
    case Target::kSkinnyMasked:
      return "skinny_masked";
    case Target::kSkinnyMaskedBtAsync:
      return "skinny_masked_bt_async";
    case Target::kSkinnyMaskedBtPll:
      return "skinny_masked_bt_pll";
  }
  return "unknown";
}

Target parse_target(std::string_view name) {
  for (auto t : {Target::kAesUnprotected, Target::kAesBtAsync,
                 Target::kAesBtPll, Target::kSkinnyMasked,
                 Target::kSkinnyMaskedBtAsync, Target::kSkinnyMaskedBtPll}) {
    if (target_name(t) == name) return t;
  }
  throw InvalidArgument("unknown target '" + std::string(name) + "'");
}

namespace {

std::string mtd_text(const std::optional<std::size_t>& m) {
  return m ? std::to_string(*m) : "none";
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

fs::path resolve(const fs::path& dir, const std::string& name) {
  fs::path p(name);
  return p.is_absolute() ? p : dir / p;
}

}  // namespace

CipherId ExperimentConfig::cipher() const {
  return target == Target::kSkinnyMasked ||
                 target == Target::kSkinnyMaskedBtAsync ||
                 target == Target::kSkinnyMaskedBtPll
             ? CipherId::kSkinny128
             : CipherId::kAes128;
}

bool ExperimentConfig::masked() const {
  return cipher() == CipherId::kSkinny128;
}

Protection ExperimentConfig::protection() const {
  switch (target) {
    case Target::kAesBtAsync:
    case Target::kSkinnyMaskedBtAsync:
      return Protection::kAsync;
    case Target::kAesBtPll:
    case Target::kSkinnyMaskedBtPll:
      return Protection::kPll;
    default:
      return Protection::kNone;
  }
}

ExperimentConfig ExperimentConfig::parse(std::string_view text) {
  const ConfigFile cfg = ConfigFile::parse(text);
  ExperimentConfig e;
  if (!cfg.has_section("experiment")) {
    throw ConfigError(0, "missing [experiment] section");
  }
  const int target_line = cfg.line_of("experiment", "target");
  try {
    e.target = parse_target(cfg.require("experiment", "target"));
  } catch (const InvalidArgument& err) {
    throw ConfigError(target_line, err.what());
  }
  e.key = cfg.get_block("experiment", "key");
  e.seed = cfg.get_u64("experiment", "seed", e.seed);
  e.traces = static_cast<std::size_t>(
      cfg.get_u64("experiment", "traces", e.traces));
  if (e.traces == 0) {
    throw ConfigError(cfg.line_of("experiment", "traces"),
                      "traces must be at least 1");
  }

  e.leakage = default_leakage(e.cipher(), e.masked());
  auto& l = e.leakage;
  l.alpha = cfg.get_double("leakage", "alpha", l.alpha);
  l.sigma_noise = cfg.get_double("leakage", "sigma_noise", l.sigma_noise);
  l.mem_gamma = cfg.get_double("leakage", "mem_gamma", l.mem_gamma);
  l.mem_tau = cfg.get_double("leakage", "mem_tau", l.mem_tau);
  l.drift_step = cfg.get_double("leakage", "drift_step", l.drift_step);
  l.temp_coeff = cfg.get_double("leakage", "temp_coeff", l.temp_coeff);
  l.sample_rate = cfg.get_double("leakage", "sample_rate", l.sample_rate);
  try {
    l.validate();
  } catch (const InvalidArgument& err) {
    throw ConfigError(cfg.section_line("leakage"), err.what());
  }

  auto& a = e.acquisition;
  a.offset = cfg.get_double("acquisition", "offset", a.offset);
  a.window = cfg.get_double("acquisition", "window", a.window);
  a.zero_inputs = cfg.get_bool("acquisition", "zero_inputs", a.zero_inputs);
  a.warmup_traces = static_cast<int>(
      cfg.get_int("acquisition", "warmup_traces", a.warmup_traces));
  try {
    a.validate();
  } catch (const InvalidArgument& err) {
    throw ConfigError(cfg.section_line("acquisition"), err.what());
  }

  const Protection prot = e.protection();
  if (cfg.has_section("monitor") != (prot == Protection::kAsync)) {
    const int line = cfg.section_line("monitor") ? cfg.section_line("monitor")
                                                 : target_line;
    throw ConfigError(line, prot == Protection::kAsync
                                ? "target needs a [monitor] section"
                                : "[monitor] is only valid for *_bt_async targets");
  }
  if (cfg.has_section("pll") != (prot == Protection::kPll)) {
    const int line =
        cfg.section_line("pll") ? cfg.section_line("pll") : target_line;
    throw ConfigError(line, prot == Protection::kPll
                                ? "target needs a [pll] section"
                                : "[pll] is only valid for *_bt_pll targets");
  }
  if (prot == Protection::kAsync) {
    MonitorConfig m;
    m.unit_delay = cfg.get_int("monitor", "unit_delay", m.unit_delay);
    m.tap_stride =
        static_cast<int>(cfg.get_int("monitor", "tap_stride", m.tap_stride));
    m.n_taps = static_cast<int>(cfg.get_int("monitor", "n_taps", m.n_taps));
    m.clk_delay = cfg.get_int("monitor", "clk_delay", m.clk_delay);
    m.t_m = cfg.get_int("monitor", "t_m", m.t_m);
    m.comb_delay = cfg.get_int("monitor", "comb_delay", m.comb_delay);
    m.delay_sigma = cfg.get_double("monitor", "delay_sigma", m.delay_sigma);
    m.delay_seed = cfg.get_u64("monitor", "delay_seed", m.delay_seed);
    try {
      m.validate();
    } catch (const InvalidArgument& err) {
      throw ConfigError(cfg.section_line("monitor"), err.what());
    }
    if (!m.glitch_safe()) {
      const int line = cfg.line_of("monitor", "clk_delay");
      throw ConfigError(line ? line : cfg.section_line("monitor"),
                        "clk_delay must exceed comb_delay");
    }
    e.monitor = m;
  }
  if (prot == Protection::kPll) {
    PllConfig p;
    p.tolerance = cfg.get_double("pll", "tolerance", p.tolerance);
    p.lock_time = cfg.get_int("pll", "lock_time", p.lock_time);
    p.fallback_delay = cfg.get_int("pll", "fallback_delay", p.fallback_delay);
    if (!(p.tolerance > 0.0) || p.lock_time < 0 || p.fallback_delay <= 0) {
      throw ConfigError(cfg.section_line("pll"),
                        "pll needs tolerance > 0, lock_time >= 0 and "
                        "fallback_delay > 0");
    }
    e.pll = p;
  }

  e.clock_period = cfg.get_int("clock", "period", e.clock_period);
  if (e.clock_period <= 0) {
    throw ConfigError(cfg.line_of("clock", "period"), "period must be positive");
  }
  e.stop_level = static_cast<int>(cfg.get_int("clock", "stop_level", 0));
  if (e.stop_level != 0 && e.stop_level != 1) {
    throw ConfigError(cfg.line_of("clock", "stop_level"),
                      "stop_level must be 0 or 1");
  }
  e.rng_bits_per_cycle = static_cast<unsigned>(
      cfg.get_u64("clock", "rng_bits_per_cycle", 0));
  if (e.monitor && e.monitor->t_n() <= e.clock_period / 2) {
    throw ConfigError(cfg.section_line("monitor"),
                      "t_n must exceed half the clock period");
  }

  const std::string order = cfg.get("attack", "kind")
                                .value_or(e.masked() ? "cpa2" : "cpa1");
  const int kind_line = cfg.line_of("attack", "kind");
  if (order == "cpa1") {
    e.attack = AttackOrder::kCpa1;
  } else if (order == "cpa2") {
    e.attack = AttackOrder::kCpa2;
  } else {
    throw ConfigError(kind_line, "kind: expected cpa1 or cpa2");
  }
  if (e.attack == AttackOrder::kCpa2 && e.cipher() != CipherId::kSkinny128) {
    throw ConfigError(kind_line, "cpa2 needs a SKINNY target");
  }
  if (auto grid = cfg.get("attack", "checkpoints")) {
    if (*grid == "default" || *grid == "fine") {
      e.checkpoint_grid = *grid;
    } else {
      e.checkpoint_grid = "list";
      for (auto c : cfg.get_u64s("attack", "checkpoints")) {
        e.checkpoints.push_back(static_cast<std::size_t>(c));
      }
      for (std::size_t i = 0; i < e.checkpoints.size(); ++i) {
        if (e.checkpoints[i] < 2 ||
            (i > 0 && e.checkpoints[i] <= e.checkpoints[i - 1])) {
          throw ConfigError(cfg.line_of("attack", "checkpoints"),
                            "checkpoints must be increasing and at least 2");
        }
      }
    }
  }
  e.half_window =
      static_cast<int>(cfg.get_int("attack", "half_window", e.half_window));
  if (e.half_window < 1) {
    throw ConfigError(cfg.line_of("attack", "half_window"),
                      "half_window must be at least 1");
  }

  e.sweep_offsets = cfg.get_doubles("sweep", "offsets");
  for (double o : e.sweep_offsets) {
    if (o < 0.0) {
      throw ConfigError(cfg.line_of("sweep", "offsets"),
                        "offsets must be non-negative");
    }
  }
  e.sweep_workers =
      static_cast<std::size_t>(cfg.get_u64("sweep", "workers", 0));

  e.trace_file = cfg.get("output", "traces").value_or(e.trace_file);
  e.trace_csv = cfg.get("output", "trace_csv").value_or("");
  e.result_file = cfg.get("output", "result").value_or(e.result_file);
  e.sweep_file = cfg.get("output", "sweep").value_or(e.sweep_file);
  e.report_dir = cfg.get("report", "dir").value_or(e.report_dir);
  if (auto in = cfg.get("report", "inputs")) {
    std::stringstream ss(*in);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto b = item.find_first_not_of(" \t");
      auto last = item.find_last_not_of(" \t");
      if (b != std::string::npos) {
        e.report_inputs.push_back(item.substr(b, last - b + 1));
      }
    }
  }
  cfg.reject_unused();
  return e;
}

ExperimentConfig ExperimentConfig::load(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

CampaignSpec ExperimentConfig::campaign() const {
  CampaignSpec s;
  s.cipher = cipher();
  s.masked = masked();
  s.key = key;
  s.n_traces = traces;
  s.acquisition = acquisition;
  s.leakage = leakage;
  s.seed = seed;
  s.protection = protection();
  if (monitor) s.monitor = *monitor;
  if (pll) s.pll = *pll;
  s.clock_period = clock_period;
  s.stop_level = stop_level;
  s.rng_bits_per_cycle = rng_bits_per_cycle;
  s.target = std::string(target_name(target));
  return s;
}

AttackKind ExperimentConfig::attack_kind() const {
  if (cipher() == CipherId::kAes128) return AttackKind::kAesFinalRound;
  return attack == AttackOrder::kCpa2 ? AttackKind::kSkinnySecondOrder
                                      : AttackKind::kSkinnyFirstOrder;
}

std::vector<std::size_t> ExperimentConfig::resolved_checkpoints(
    std::size_t n) const {
  if (checkpoint_grid == "fine") return fine_checkpoints(n);
  if (checkpoint_grid == "list") {
    std::vector<std::size_t> out;
    for (auto c : checkpoints) {
      if (c <= n) out.push_back(c);
    }
    if (out.empty() || out.back() != n) out.push_back(n);
    return out;
  }
  return default_checkpoints(n);
}

std::vector<std::uint8_t> ExperimentConfig::attacked_key() const {
  if (cipher() == CipherId::kAes128) {
    const Block rk = aes_expand_key(key)[10];
    return {rk.begin(), rk.end()};
  }
  const auto sk = skinny_round2_subkey(key);
  return {sk.begin(), sk.end()};
}

SimulateSummary cmd_simulate(const ExperimentConfig& cfg, const fs::path& out_dir,
                             std::ostream& log) {
  ensure_dir(out_dir);
  SimulateSummary sum;
  const CampaignSpec spec = cfg.campaign();
  TraceSet ts = acquire_campaign(spec, [&](const TraceObservation& obs) {
    if (!obs.monitor) return;
    if (!obs.monitor->cleared_with_randomness) {
      ++sum.clears_missing;
      return;
    }
    // The cleared registers must hold exactly the bits the RNG issued.
    std::vector<std::uint8_t> held;
    for (const auto& r : obs.measured.registers) {
      if (r.sensitive && r.share_index <= 0) {
        held.insert(held.end(), r.bytes.begin(), r.bytes.end());
      }
    }
    const auto& words = obs.monitor->clear_words;
    if (held.size() <= words.size() &&
        std::equal(held.begin(), held.end(), words.begin())) {
      ++sum.clears_verified;
    } else {
      ++sum.clears_missing;
    }
  });
  sum.trace_path = resolve(out_dir, cfg.trace_file);
  write_bttr(ts, sum.trace_path);
  if (!cfg.trace_csv.empty()) write_trace_csv(ts, resolve(out_dir, cfg.trace_csv));
  sum.n = ts.size();
  sum.params_digest = cfg.leakage.digest();
  char digest[32];
  std::snprintf(digest, sizeof(digest), "%016llx",
                static_cast<unsigned long long>(sum.params_digest));
  log << "simulate: target=" << target_name(cfg.target) << " n=" << sum.n
      << " seed=" << cfg.seed << " params_digest=" << digest;
  if (cfg.protection() != Protection::kNone) {
    log << " clears_verified=" << sum.clears_verified
        << " clears_missing=" << sum.clears_missing;
  }
  log << " file=" << sum.trace_path.string() << "\n";
  return sum;
}

CpaResult cmd_attack(const ExperimentConfig& cfg, const fs::path& out_dir,
                     std::ostream& log,
                     const std::optional<fs::path>& trace_path) {
  const fs::path in = trace_path ? *trace_path : resolve(out_dir, cfg.trace_file);
  TraceSet ts = read_bttr(in);
  AttackOptions opts;
  opts.half_window = cfg.half_window;
  opts.checkpoints = cfg.resolved_checkpoints(ts.size());
  // The true key is only meaningful when the file came from this config.
  if (ts.meta.key_id == fnv1a64(cfg.key)) opts.true_key = cfg.attacked_key();
  CpaResult r = run_attack(ts, cfg.attack_kind(), opts);
  ensure_dir(out_dir);
  const fs::path out = resolve(out_dir, cfg.result_file);
  write_cpa_csv(r, out);

  const auto guess = r.best_guess();
  log << "attack: " << attack_name(r.attack) << " n=" << ts.size()
      << " best_guess=" << to_hex(guess);
  if (r.attack == AttackKind::kAesFinalRound) {
    Block rk{};
    std::copy(guess.begin(), guess.end(), rk.begin());
    log << " master_key=" << to_hex(aes_master_key_from_last_round(rk));
  }
  log << "\n";
  if (!r.true_key.empty()) {
    log << "attack: byte_mtd=";
    for (std::size_t b = 0; b < r.byte_mtd.size(); ++b) {
      log << (b ? "," : "") << mtd_text(r.byte_mtd[b]);
    }
    log << " mtd=" << mtd_text(r.mtd) << "\n";
  }
  log << "attack: result=" << out.string() << "\n";
  return r;
}

std::vector<SweepPoint> run_offset_sweep(const ExperimentConfig& cfg) {
  if (cfg.sweep_offsets.size() < 2) {
    throw InvalidArgument("offset sweep needs at least 2 offsets");
  }
  const std::size_t n = cfg.sweep_offsets.size();
  std::vector<SweepPoint> out(n);
  std::size_t workers = cfg.sweep_workers;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        ExperimentConfig c = cfg;
        c.acquisition.offset = cfg.sweep_offsets[i];
        TraceSet ts = acquire_campaign(c.campaign());
        AttackOptions opts;
        opts.half_window = c.half_window;
        opts.checkpoints = c.resolved_checkpoints(ts.size());
        opts.true_key = c.attacked_key();
        out[i] = {cfg.sweep_offsets[i], run_attack(ts, c.attack_kind(), opts).mtd};
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<SweepPoint> cmd_sweep_offset(const ExperimentConfig& cfg,
                                         const fs::path& out_dir,
                                         std::ostream& log) {
  auto points = run_offset_sweep(cfg);
  ensure_dir(out_dir);
  const fs::path out = resolve(out_dir, cfg.sweep_file);
  write_sweep_csv(points, out);
  for (const auto& p : points) {
    log << "sweep: offset=" << p.offset << " mtd=" << mtd_text(p.mtd) << "\n";
  }
  log << "sweep: result=" << out.string() << "\n";
  return points;
}

ScenarioOutcome cmd_monitor_test(const Scenario& scenario,
                                 const fs::path& out_dir, std::ostream& log) {
  ScenarioOutcome res = run_scenario(scenario);
  ensure_dir(out_dir);
  const fs::path report = out_dir / (scenario.name + "_report.txt");
  const fs::path fps = out_dir / (scenario.name + "_false_positives.csv");
  {
    std::ofstream f(report, std::ios::trunc);
    if (!f) throw IoError("cannot open " + report.string());
    f << "scenario=" << scenario.name << "\nkind="
      << scenario_kind_name(scenario.kind) << "\n"
      << res.report.serialize();
    if (res.aliasing_predicted) {
      f << "aliasing_predicted=" << (*res.aliasing_predicted ? "true" : "false")
        << "\n";
    }
    f << "bypassed=" << (res.report.bypassed() ? "true" : "false") << "\n";
  }
  {
    std::ofstream f(fps, std::ios::trunc);
    if (!f) throw IoError("cannot open " + fps.string());
    f << res.report.false_positives_csv();
  }
  const auto& r = res.report;
  auto t = [](const std::optional<Picoseconds>& v) {
    return v ? std::to_string(*v) : std::string("none");
  };
  log << "monitor-test: " << scenario.name << " stop=" << t(r.stop_time)
      << " detect=" << t(r.detect_time) << " clear=" << t(r.clear_edge_time)
      << " false_positives=" << r.false_positive_times.size()
      << " bypassed=" << (r.bypassed() ? "true" : "false") << "\n";
  log << "monitor-test: report=" << report.string() << "\n";
  return res;
}

void write_sweep_csv(const std::vector<SweepPoint>& points,
                     const fs::path& path) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << "offset_us,mtd\n";
  char buf[64];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof(buf), "%.17g", p.offset);
    f << buf << "," << mtd_text(p.mtd) << "\n";
  }
  if (!f) throw IoError("failed writing " + path.string());
}

std::vector<SweepPoint> read_sweep_csv(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(f, line) || line != "offset_us,mtd") {
    throw FormatError(path.string() + ": missing sweep header");
  }
  std::vector<SweepPoint> out;
  int lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) +
                        ": expected offset,mtd");
    }
    SweepPoint p;
    try {
      p.offset = std::stod(line.substr(0, comma));
      const std::string m = line.substr(comma + 1);
      if (m != "none") p.mtd = std::stoull(m);
    } catch (const std::exception&) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) +
                        ": bad number");
    }
    out.push_back(p);
  }
  return out;
}

namespace {

bool is_sweep_csv(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path.string());
  std::string line;
  std::getline(f, line);
  return line == "offset_us,mtd";
}

std::vector<fs::path> report_cpa(const fs::path& in, const fs::path& out_dir) {
  const CpaResult r = read_cpa_csv(in);
  const std::string stem = in.stem().string();
  const fs::path series = out_dir / (stem + "_corr_series.csv");
  const fs::path summary = out_dir / (stem + "_summary.csv");
  const auto best = r.best_guess();
  // Highlight the true key when known, otherwise the final rank-1 guess.
  std::vector<std::uint8_t> mark = r.true_key.empty() ? best : r.true_key;
  {
    std::ofstream f(series, std::ios::trunc);
    if (!f) throw IoError("cannot open " + series.string());
    f << "traces,byte,guess,abs_corr,highlight\n";
    char buf[32];
    for (std::size_t b = 0; b < r.n_bytes(); ++b) {
      for (int k = 0; k < 256; ++k) {
        for (std::size_t c = 0; c < r.checkpoints.size(); ++c) {
          const double v = r.corr[c][b][k];
          if (std::isnan(v)) {
            std::snprintf(buf, sizeof(buf), "nan");
          } else {
            std::snprintf(buf, sizeof(buf), "%.9g", std::fabs(v));
          }
          f << r.checkpoints[c] << "," << b << "," << k << "," << buf << ","
            << (mark[b] == k ? 1 : 0) << "\n";
        }
      }
    }
  }
  {
    std::ofstream f(summary, std::ios::trunc);
    if (!f) throw IoError("cannot open " + summary.string());
    f << "byte,highlight,best_guess,highlight_rank,mtd\n";
    const std::size_t last = r.checkpoints.size() - 1;
    char buf[64];
    for (std::size_t b = 0; b < r.n_bytes(); ++b) {
      std::snprintf(buf, sizeof(buf), "%zu,%02x,%02x,%d,", b, mark[b], best[b],
                    r.rank_of(last, b, mark[b]));
      f << buf
        << (b < r.byte_mtd.size() ? mtd_text(r.byte_mtd[b]) : std::string("none"))
        << "\n";
    }
    f << "whole,,,," << mtd_text(r.mtd) << "\n";
  }
  return {series, summary};
}

std::vector<fs::path> report_sweep(const fs::path& in, const fs::path& out_dir) {
  const auto points = read_sweep_csv(in);
  const fs::path out = out_dir / (in.stem().string() + "_mtd_vs_offset.csv");
  std::ofstream f(out, std::ios::trunc);
  if (!f) throw IoError("cannot open " + out.string());
  // Plot-ready: disclosed MTDs only, failures flagged separately.
  f << "offset_us,mtd,disclosed\n";
  char buf[64];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof(buf), "%.17g", p.offset);
    f << buf << "," << (p.mtd ? std::to_string(*p.mtd) : "") << ","
      << (p.mtd ? 1 : 0) << "\n";
  }
  return {out};
}

}  // namespace

std::vector<fs::path> cmd_report(const std::vector<fs::path>& inputs,
                                 const fs::path& out_dir, std::ostream& log) {
  if (inputs.empty()) throw InvalidArgument("report needs at least one input");
  ensure_dir(out_dir);
  std::vector<fs::path> written;
  for (const auto& in : inputs) {
    auto files = is_sweep_csv(in) ? report_sweep(in, out_dir)
                                  : report_cpa(in, out_dir);
    written.insert(written.end(), files.begin(), files.end());
  }
  const fs::path manifest = out_dir / "manifest.txt";
  std::ofstream f(manifest, std::ios::trunc);
  if (!f) throw IoError("cannot open " + manifest.string());
  for (const auto& p : written) f << p.filename().string() << "\n";
  written.push_back(manifest);
  for (const auto& p : written) log << "report: wrote " << p.string() << "\n";
  return written;
}

}  // namespace statica
