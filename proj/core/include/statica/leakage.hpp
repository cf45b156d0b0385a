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
#include <string>

#include "statica/snapshot.hpp"

namespace statica {

// Static power model. Times are in microseconds.
struct LeakageParams {
  double alpha = 1.0;          // power units per set bit
  double sigma_noise = 0.0;    // per-sample Gaussian noise
  double mem_gamma = 0.0;      // memory effect magnitude per toggled bit
  double mem_tau = 25.0;       // memory effect time constant
  double drift_step = 0.0;     // random-walk drift per trace
  double temp_coeff = 1.0;     // multiplies alpha
  double sample_rate = 1.0;    // samples per microsecond

  // Throws InvalidArgument unless alpha > 0, mem_tau > 0, sigma_noise >= 0,
  // sample_rate >= 1 and the remaining fields are finite and non-negative.
  void validate() const;
  // key=value lines with round-trip precision.
  std::string serialize() const;
  std::uint64_t digest() const;

  bool operator==(const LeakageParams&) const = default;
};

struct AcquisitionSpec {
  double offset = 250.0;   // from the last clock edge to the window start
  double window = 200.0;
  bool zero_inputs = true;
  int warmup_traces = 100;

  void validate() const;
  std::size_t samples(const LeakageParams& p) const;

  bool operator==(const AcquisitionSpec&) const = default;
};

// Calibrated defaults per target; see tools/calibrate.cpp.
LeakageParams default_leakage(CipherId cipher, bool masked);
LeakageParams noiseless_leakage();

double static_level(const RegisterSnapshot& snapshot, const LeakageParams& p);
double memory_effect(double t_since_edge, double prior_activity,
                     const LeakageParams& p);

// Mean over the window samples of static level, memory effect, Gaussian
// noise and the supplied drift. `edge_lag` is how long after the
// attacker's last edge the device saw its own last edge (for instance a
// masked clear), which shortens the memory-effect age.
double measure_trace(const RegisterSnapshot& snapshot, double prior_activity,
                     const AcquisitionSpec& spec, const LeakageParams& p,
                     std::uint64_t noise_seed, double drift = 0.0,
                     double edge_lag = 0.0);

}  // namespace statica
