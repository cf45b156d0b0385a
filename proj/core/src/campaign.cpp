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

#include "statica/campaign.hpp"

#include "statica/aes.hpp"
#include "statica/error.hpp"
#include "statica/random.hpp"
#include "statica/skinny.hpp"
#include "statica/trivium.hpp"

namespace statica {
namespace {

struct Lanes {
  std::uint64_t plaintext, noise, drift, mask, clear, input;
};

Lanes derive_lanes(std::uint64_t seed) {
  std::uint64_t s = seed;
  Lanes l{};
  l.plaintext = splitmix64(s);
  l.noise = splitmix64(s);
  l.drift = splitmix64(s);
  l.mask = splitmix64(s);
  l.clear = splitmix64(s);
  l.input = splitmix64(s);
  return l;
}

std::uint64_t trace_seed(std::uint64_t base, std::size_t index) {
  std::uint64_t s = base + index;
  return splitmix64(s);
}

void add_input_bus(RegisterSnapshot& snap, const Block& bus) {
  snap.registers.push_back(
      {"input", std::vector<std::uint8_t>(bus.begin(), bus.end()), true, -1});
}

}  // namespace

std::string_view protection_name(Protection p) {
  switch (p) {
    case Protection::kNone:
      return "none";
    case Protection::kAsync:
      return "async";
    case Protection::kPll:
      return "pll";
  }
  return "none";
}

Protection parse_protection(std::string_view name) {
  if (name == "none") return Protection::kNone;
  if (name == "async") return Protection::kAsync;
  if (name == "pll") return Protection::kPll;
  throw InvalidArgument("unknown protection: " + std::string(name));
}

unsigned CampaignSpec::clear_bits_per_cycle() const {
  if (rng_bits_per_cycle != 0) return rng_bits_per_cycle;
  return cipher == CipherId::kAes128 ? 128 : 64;
}

void CampaignSpec::validate() const {
  if (n_traces == 0) throw InvalidArgument("campaign needs at least 1 trace");
  if (masked && cipher != CipherId::kSkinny128) {
    throw InvalidArgument("masking is only modeled for SKINNY");
  }
  if (clock_period <= 0) throw InvalidArgument("clock period must be positive");
  acquisition.validate();
  leakage.validate();
  if (protection == Protection::kAsync) {
    monitor.validate();
    if (monitor.t_n() <= clock_period / 2) {
      throw InvalidArgument("monitor t_n does not exceed half the clock period");
    }
  }
}

std::uint64_t campaign_clear_seed(const CampaignSpec& spec) {
  return derive_lanes(spec.seed).clear;
}

TraceSet acquire_campaign(const CampaignSpec& spec,
                          const TraceObserver& observer) {
  spec.validate();
  const Lanes lanes = derive_lanes(spec.seed);
  const bool skinny = spec.cipher == CipherId::kSkinny128;

  TraceSet ts(16);
  ts.meta.cipher = spec.cipher;
  ts.meta.masked = spec.masked;
  ts.meta.target = spec.target;
  ts.meta.data_field = skinny ? "plaintext" : "ciphertext";
  ts.meta.key_id = fnv1a64(spec.key);
  ts.meta.leakage = spec.leakage;
  ts.meta.acquisition = spec.acquisition;
  ts.meta.seed = spec.seed;
  ts.meta.protection = std::string(protection_name(spec.protection));
  ts.reserve(spec.n_traces);

  Rng plaintexts(lanes.plaintext);
  Rng drift_rng(lanes.drift);
  Rng inputs(lanes.input);
  Trivium masks = Trivium::from_seed(lanes.mask, 64);
  Trivium clears = Trivium::from_seed(lanes.clear, spec.clear_bits_per_cycle());
  std::vector<std::uint8_t> mask_stream(kSkinnyMaskBytes);

  double drift = 0.0;
  for (int i = 0; i < spec.acquisition.warmup_traces; ++i) {
    drift += spec.leakage.drift_step * drift_rng.normal();
  }

  ClockSpec clock;
  clock.period = spec.clock_period;
  clock.stop_level = spec.stop_level;

  for (std::size_t i = 0; i < spec.n_traces; ++i) {
    Block pt{};
    plaintexts.fill(pt);
    RoundTrace trace;
    Block ct{};
    if (!skinny) {
      auto r = aes_encrypt(spec.key, pt);
      ct = r.ciphertext;
      trace = std::move(r.trace);
    } else if (spec.masked) {
      masks.fill(mask_stream);
      auto r = skinny_masked_encrypt(spec.key, pt, mask_stream);
      ct = r.ciphertext;
      trace = std::move(r.trace);
    } else {
      auto r = skinny_encrypt(spec.key, pt);
      ct = r.ciphertext;
      trace = std::move(r.trace);
    }
    const std::size_t poi = trace.poi_cycle;
    if (!spec.acquisition.zero_inputs) {
      Block prev_bus{}, bus{};
      inputs.fill(prev_bus);
      inputs.fill(bus);
      add_input_bus(trace.snapshots[poi - 1], prev_bus);
      for (std::size_t c = 0; c < trace.snapshots.size(); ++c) {
        if (c != poi - 1) add_input_bus(trace.snapshots[c], bus);
      }
    }
    const RegisterSnapshot& poi_snap = trace.snapshots[poi];

    RegisterSnapshot measured;
    double prior = 0.0;
    double edge_lag = 0.0;
    MonitorReport report;
    const bool protected_target = spec.protection != Protection::kNone;
    if (!protected_target) {
      measured = poi_snap;
      prior = sensitive_hamming_distance(trace.snapshots[poi - 1], poi_snap);
    } else {
      // Rising edges 0..poi load snapshots 0..poi, then the clock is held.
      const auto T = spec.clock_period;
      const auto last_rise = static_cast<Picoseconds>(poi) * T;
      clock.stop_at = spec.stop_level ? last_rise + T / 4 : last_rise + T / 2;
      const Waveform clk = make_clock(clock);
      SnapshotDevice device(trace);
      MonitorRunOptions run;
      run.stop_time = clock_stop_time(clock, clk);
      run.nominal_period = T;
      if (spec.protection == Protection::kAsync) {
        report = run_async_monitor(clk, spec.monitor, &device, clears, run);
      } else {
        report = run_pll_monitor(clk, T, &device, clears, spec.pll, run);
      }
      measured = device.current();
      prior = sensitive_hamming_distance(poi_snap, measured);
      if (report.clear_edge_time) {
        edge_lag = static_cast<double>(*report.clear_edge_time - last_rise) *
                   1e-6;
      }
    }

    const double value =
        measure_trace(measured, prior, spec.acquisition, spec.leakage,
                      trace_seed(lanes.noise, i), drift, edge_lag);
    drift += spec.leakage.drift_step * drift_rng.normal();
    ts.push_back(skinny ? std::span<const std::uint8_t>(pt)
                        : std::span<const std::uint8_t>(ct),
                 value);
    if (observer) {
      observer({i, pt, ct, poi_snap, measured,
                protected_target ? &report : nullptr, value});
    }
  }
  return ts;
}

TraceSet acquire_campaign(CipherId cipher, const Block& key,
                          std::size_t n_traces, const AcquisitionSpec& acq,
                          const LeakageParams& params, std::uint64_t seed,
                          bool masked) {
  CampaignSpec spec;
  spec.cipher = cipher;
  spec.masked = masked;
  spec.key = key;
  spec.n_traces = n_traces;
  spec.acquisition = acq;
  spec.leakage = params;
  spec.seed = seed;
  return acquire_campaign(spec, {});
}

}  // namespace statica
