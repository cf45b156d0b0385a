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

#include "statica/stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "statica/error.hpp"

namespace statica {

int hamming_weight(std::uint8_t b) {
  return std::popcount(static_cast<unsigned>(b));
}

std::vector<double> highpass(std::span<const double> values, int half_window) {
  if (values.empty()) throw InvalidArgument("highpass of an empty sequence");
  if (half_window < 1) throw InvalidArgument("highpass half_window must be >= 1");
  const auto n = static_cast<std::ptrdiff_t>(values.size());
  std::vector<double> out(values.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - half_window);
    std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, i + half_window);
    double sum = 0.0;
    for (std::ptrdiff_t j = lo; j <= hi; ++j) sum += values[j];
    out[i] = values[i] - sum / static_cast<double>(hi - lo + 1);
  }
  return out;
}

std::vector<double> center_square(std::span<const double> values) {
  if (values.size() < 2) {
    throw InvalidArgument("center_square needs at least two values");
  }
  double mean = std::accumulate(values.begin(), values.end(), 0.0) /
                static_cast<double>(values.size());
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    double d = values[i] - mean;
    out[i] = d * d;
  }
  return out;
}

void StreamingPearson::add(double x, double y) {
  ++n_;
  const double n = static_cast<double>(n_);
  const double dx = x - mean_x_;
  const double dy = y - mean_y_;
  mean_x_ += dx / n;
  mean_y_ += dy / n;
  m2x_ += dx * (x - mean_x_);
  m2y_ += dy * (y - mean_y_);
  cxy_ += dx * (y - mean_y_);
}

double StreamingPearson::correlation() const {
  if (n_ < 2 || m2x_ <= 0.0 || m2y_ <= 0.0) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return std::clamp(cxy_ / std::sqrt(m2x_ * m2y_), -1.0, 1.0);
}

namespace {
void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("pearson length mismatch");
  if (x.size() < 2) throw InvalidArgument("pearson needs at least two samples");
}
}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  StreamingPearson p;
  for (std::size_t i = 0; i < x.size(); ++i) p.add(x[i], y[i]);
  return p.correlation();
}

double pearson_two_pass(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

namespace {
std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> rank(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[idx[k]] = r;
    i = j + 1;
  }
  return rank;
}
}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  auto rx = average_ranks(x);
  auto ry = average_ranks(y);
  return pearson_two_pass(rx, ry);
}

}  // namespace statica
