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

#include <vector>

#include "statica/trivium.hpp"

namespace {

void BM_TriviumFill(benchmark::State& state) {
  auto t = statica::Trivium::from_seed(1, 64);
  std::vector<std::uint8_t> buf(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    t.fill(buf);
    benchmark::DoNotOptimize(buf.data());
  }
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TriviumFill)->Arg(16)->Arg(4096);

void BM_TriviumNext64(benchmark::State& state) {
  auto t = statica::Trivium::from_seed(1, 64);
  for (auto _ : state) benchmark::DoNotOptimize(t.next64());
}
BENCHMARK(BM_TriviumNext64);

}  // namespace
