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

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <limits>

#include "statica/error.hpp"
#include "statica/random.hpp"
#include "statica/stats.hpp"

namespace statica {
namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  Rng r(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = r.normal();
  return v;
}

TEST(Stats, HammingWeight) {
  EXPECT_EQ(hamming_weight(0x00), 0);
  EXPECT_EQ(hamming_weight(0xff), 8);
  EXPECT_EQ(hamming_weight(0xa5), 4);
  for (int b = 0; b < 256; ++b) {
    EXPECT_EQ(hamming_weight(static_cast<std::uint8_t>(b)),
              std::popcount(static_cast<unsigned>(b)));
  }
}

TEST(Stats, PearsonExamples) {
  const std::vector<double> x = {1, 2, 3, 4, 5, 6, 7, 8};
  EXPECT_NEAR(pearson(x, x), 1.0, 1e-15);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = -2 * x[i] + 7;
  EXPECT_NEAR(pearson(x, y), -1.0, 1e-15);
  // Frozen from numpy.corrcoef.
  const std::vector<double> z = {2.5, 0.1, 3.3, 4.8, 1.2, 9.9, 7.0, 6.1};
  EXPECT_NEAR(pearson(x, z), 0.6825774174140071, 1e-12);
  EXPECT_NEAR(pearson_two_pass(x, z), 0.6825774174140071, 1e-12);
}

TEST(Stats, PearsonDegenerateInputs) {
  const std::vector<double> c = {1, 1, 1};
  const std::vector<double> x = {1, 2, 3};
  EXPECT_TRUE(std::isnan(pearson(c, x)));
  EXPECT_THROW(pearson(std::vector<double>{1}, std::vector<double>{1}),
               InvalidArgument);
  EXPECT_THROW(pearson(x, std::vector<double>{1, 2}), InvalidArgument);
  StreamingPearson s;
  EXPECT_TRUE(std::isnan(s.correlation()));
}

TEST(Stats, StreamingMatchesTwoPass) {
  const auto x = random_vector(100000, 1);
  auto y = random_vector(100000, 2);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = 0.3 * x[i] + y[i] + 1e3;
  const double a = pearson(x, y);
  const double b = pearson_two_pass(x, y);
  EXPECT_LE(std::fabs(a - b), 1e-10 * std::fabs(b));
}

TEST(Stats, PearsonAffineProperties) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto x = random_vector(200, 10 + seed);
    auto y = random_vector(200, 100 + seed);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += 0.5 * x[i];
    const double r = pearson(x, y);
    std::vector<double> pos(y.size()), neg(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      pos[i] = 3.5 * y[i] - 11.0;
      neg[i] = -0.25 * y[i] + 4.0;
    }
    EXPECT_NEAR(pearson(x, pos), r, 1e-12);
    EXPECT_NEAR(pearson(x, neg), -r, 1e-12);
    EXPECT_NEAR(pearson(pos, x), r, 1e-12);
  }
}

TEST(Stats, HighpassConstantAndRamp) {
  std::vector<double> c(500, 42.0);
  for (double v : highpass(c, 50)) EXPECT_NEAR(v, 0.0, 1e-9);
  std::vector<double> ramp(500);
  for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = 3.0 * i - 100.0;
  const auto h = highpass(ramp, 50);
  for (std::size_t i = 50; i + 50 < h.size(); ++i) EXPECT_NEAR(h[i], 0.0, 1e-9);
  EXPECT_THROW(highpass(std::vector<double>{}, 5), InvalidArgument);
  EXPECT_THROW(highpass(ramp, 0), InvalidArgument);
}

TEST(Stats, HighpassRemovesDriftAndKeepsNoise) {
  Rng r(8);
  const std::size_t n = 20000;
  std::vector<double> walk(n), noise(n);
  double w = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    w += 0.5 * r.normal();
    walk[i] = w;
    noise[i] = r.normal();
  }
  auto variance = [](const std::vector<double>& s) {
    double m = 0.0, q = 0.0;
    for (double v : s) m += v;
    m /= static_cast<double>(s.size());
    for (double v : s) q += (v - m) * (v - m);
    return q / static_cast<double>(s.size());
  };
  EXPECT_LT(variance(highpass(walk, 50)), 0.02 * variance(walk));
  EXPECT_NEAR(variance(highpass(noise, 50)), variance(noise), 0.05);
}

TEST(Stats, CenterSquare) {
  for (double v : center_square(std::vector<double>(4, 3.0))) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(center_square(std::vector<double>{0, 2}),
            (std::vector<double>{1, 1}));
  // Frozen from numpy.
  const auto out = center_square(std::vector<double>{3, -1, 4, 1.5, -5, 9, 2});
  const double expect[] = {1.1479591836734693, 8.5765306122449,
                           4.290816326530611,  0.18367346938775514,
                           48.00510204081633,  50.005102040816325,
                           0.005102040816326526};
  for (int i = 0; i < 7; ++i) EXPECT_NEAR(out[i], expect[i], 1e-12);
  EXPECT_THROW(center_square(std::vector<double>{1}), InvalidArgument);
}

TEST(Stats, Spearman) {
  // Frozen from scipy.stats.spearmanr.
  EXPECT_NEAR(spearman(std::vector<double>{3, 1, 2, 2, 5},
                       std::vector<double>{10, 20, 30, 30, 40}),
              0.36842105263157904, 1e-12);
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_NEAR(spearman(std::vector<double>{1, 2, 3, 4},
                       std::vector<double>{inf, inf, 10, 5}),
              -0.9486832980505138, 1e-12);
}

}  // namespace
}  // namespace statica
