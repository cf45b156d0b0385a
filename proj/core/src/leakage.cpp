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

#include "statica/leakage.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "statica/error.hpp"
#include "statica/hex.hpp"
#include "statica/random.hpp"

namespace statica {
namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

void LeakageParams::validate() const {
  if (!(std::isfinite(alpha) && alpha > 0.0)) {
    throw InvalidArgument("leakage alpha must be positive");
  }
  if (!(std::isfinite(mem_tau) && mem_tau > 0.0)) {
    throw InvalidArgument("leakage mem_tau must be positive");
  }
  if (!finite_nonneg(sigma_noise)) {
    throw InvalidArgument("leakage sigma_noise must be non-negative");
  }
  if (!(std::isfinite(sample_rate) && sample_rate >= 1.0)) {
    throw InvalidArgument("leakage sample_rate must be at least 1 per us");
  }
  if (!finite_nonneg(mem_gamma) || !finite_nonneg(drift_step) ||
      !finite_nonneg(temp_coeff)) {
    throw InvalidArgument(
        "leakage mem_gamma, drift_step and temp_coeff must be non-negative");
  }
}

std::string LeakageParams::serialize() const {
  std::ostringstream os;
  os << "alpha=" << fmt_double(alpha) << "\n"
     << "sigma_noise=" << fmt_double(sigma_noise) << "\n"
     << "mem_gamma=" << fmt_double(mem_gamma) << "\n"
     << "mem_tau=" << fmt_double(mem_tau) << "\n"
     << "drift_step=" << fmt_double(drift_step) << "\n"
     << "temp_coeff=" << fmt_double(temp_coeff) << "\n"
     << "sample_rate=" << fmt_double(sample_rate) << "\n";
  return os.str();
}

std::uint64_t LeakageParams::digest() const { return fnv1a64(serialize()); }

void AcquisitionSpec::validate() const {
  if (!finite_nonneg(offset)) {
    throw InvalidArgument("acquisition offset must be non-negative");
  }
  if (!(std::isfinite(window) && window > 0.0)) {
    throw InvalidArgument("acquisition window must be positive");
  }
  if (warmup_traces < 0) {
    throw InvalidArgument("acquisition warmup_traces must be non-negative");
  }
}

std::size_t AcquisitionSpec::samples(const LeakageParams& p) const {
  auto n = static_cast<std::size_t>(std::llround(window * p.sample_rate));
  return n == 0 ? 1 : n;
}

LeakageParams default_leakage(CipherId cipher, bool masked) {
  LeakageParams p;
  p.mem_tau = 25.0;
  p.mem_gamma = 800.0;
  p.drift_step = 0.5;
  // The masked target is limited by the share registers, so its noise
  // setting barely moves the second-order MTD.
  if (cipher == CipherId::kAes128 || !masked) {
    p.sigma_noise = 110.0;
  } else {
    p.sigma_noise = 14.0;
  }
  return p;
}

LeakageParams noiseless_leakage() { return LeakageParams{}; }

double static_level(const RegisterSnapshot& snapshot, const LeakageParams& p) {
  long hw = 0;
  for (const auto& r : snapshot.registers) {
    if (!r.sensitive) continue;
    for (auto b : r.bytes) hw += std::popcount(static_cast<unsigned>(b));
  }
  return p.temp_coeff * p.alpha * static_cast<double>(hw);
}

double memory_effect(double t_since_edge, double prior_activity,
                     const LeakageParams& p) {
  return prior_activity * p.mem_gamma * std::exp(-t_since_edge / p.mem_tau);
}

double measure_trace(const RegisterSnapshot& snapshot, double prior_activity,
                     const AcquisitionSpec& spec, const LeakageParams& p,
                     std::uint64_t noise_seed, double drift, double edge_lag) {
  const double level = static_level(snapshot, p);
  const std::size_t n = spec.samples(p);
  Rng rng(noise_seed);
  const bool memory = p.mem_gamma != 0.0 && prior_activity != 0.0;
  double sum = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    double v = level;
    if (memory) {
      double t = spec.offset + static_cast<double>(s) / p.sample_rate - edge_lag;
      v += memory_effect(t < 0.0 ? 0.0 : t, prior_activity, p);
    }
    if (p.sigma_noise != 0.0) v += p.sigma_noise * rng.normal();
    sum += v;
  }
  return sum / static_cast<double>(n) + drift;
}

}  // namespace statica
