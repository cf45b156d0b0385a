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

#include <benchmark/benchmark.h>

#include "statica/monitor.hpp"

namespace {

using namespace statica;

void BM_AsyncMonitorHealthy(benchmark::State& state) {
  ClockSpec spec;
  spec.cycles = static_cast<std::size_t>(state.range(0));
  spec.jitter_ppm = 1000;
  const Waveform clk = make_clock(spec);
  const MonitorConfig cfg;
  for (auto _ : state) {
    Trivium rng = Trivium::from_seed(1, 128);
    auto r = run_async_monitor(clk, cfg, nullptr, rng);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AsyncMonitorHealthy)->Arg(10000);

void BM_GlitchScenario(benchmark::State& state) {
  const MonitorConfig cfg = dense_tap_monitor_config();
  for (auto _ : state) {
    auto r = run_glitch_scenario(cfg, true);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_GlitchScenario);

}  // namespace
