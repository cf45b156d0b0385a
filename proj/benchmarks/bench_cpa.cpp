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

#include "statica/campaign.hpp"
#include "statica/cpa.hpp"
#include "statica/stats.hpp"

namespace {

using namespace statica;

const TraceSet& aes_traces(std::size_t n) {
  static std::size_t cached_n = 0;
  static TraceSet ts;
  if (cached_n != n) {
    ts = acquire_campaign(CipherId::kAes128, Block{}, n, AcquisitionSpec{},
                          default_leakage(CipherId::kAes128, false), 7);
    cached_n = n;
  }
  return ts;
}

void BM_AcquireAes(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto ts = acquire_campaign(CipherId::kAes128, Block{}, n, AcquisitionSpec{},
                               default_leakage(CipherId::kAes128, false), 7);
    benchmark::DoNotOptimize(ts);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AcquireAes)->Arg(1000)->Arg(10000);

void BM_AttackAes(benchmark::State& state) {
  const auto& ts = aes_traces(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto r = attack_aes_final_round(ts);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AttackAes)->Arg(1000)->Arg(100000);

void BM_Highpass(benchmark::State& state) {
  const auto& ts = aes_traces(100000);
  for (auto _ : state) {
    auto y = highpass(ts.values(), static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(y);
  }
}
BENCHMARK(BM_Highpass)->Arg(50);

}  // namespace
