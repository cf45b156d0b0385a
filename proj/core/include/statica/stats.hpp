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
#include <span>
#include <vector>

namespace statica {

int hamming_weight(std::uint8_t b);

// value - centered moving average over 2*half_window+1 entries, truncated
// at the edges. Throws InvalidArgument for empty input or half_window < 1.
std::vector<double> highpass(std::span<const double> values, int half_window);

// (v - mean)^2. Throws InvalidArgument for fewer than two values.
std::vector<double> center_square(std::span<const double> values);

// Single-pass Pearson accumulator using Welford co-moments.
class StreamingPearson {
 public:
  void add(double x, double y);
  std::size_t count() const { return n_; }
  // NaN when fewer than two samples or either variance is zero.
  double correlation() const;

 private:
  std::size_t n_ = 0;
  double mean_x_ = 0.0, mean_y_ = 0.0;
  double m2x_ = 0.0, m2y_ = 0.0, cxy_ = 0.0;
};

// Streaming Pearson coefficient; NaN on zero variance. Throws
// InvalidArgument on a length mismatch or fewer than two samples.
double pearson(std::span<const double> x, std::span<const double> y);
// Textbook two-pass formula, kept as an independent cross-check.
double pearson_two_pass(std::span<const double> x, std::span<const double> y);

// Spearman rank correlation with average ranks for ties. Infinite values
// rank above every finite one.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace statica
