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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "statica/aes.hpp"
#include "statica/campaign.hpp"
#include "statica/cpa.hpp"
#include "statica/error.hpp"
#include "statica/random.hpp"
#include "statica/skinny.hpp"
#include "statica/stats.hpp"

namespace statica {
namespace {

const Block kKey = block_from_hex("2b7e151628aed2a6abf7158809cf4f3c");

std::vector<std::uint8_t> last_round_key() {
  const Block rk = aes_expand_key(kKey)[10];
  return {rk.begin(), rk.end()};
}

TEST(Cpa, Checkpoints) {
  EXPECT_EQ(default_checkpoints(5000),
            (std::vector<std::size_t>{100, 200, 500, 1000, 2000, 5000}));
  EXPECT_EQ(default_checkpoints(300), (std::vector<std::size_t>{100, 200, 300}));
  EXPECT_EQ(default_checkpoints(50), (std::vector<std::size_t>{50}));
  EXPECT_EQ(fine_checkpoints(300),
            (std::vector<std::size_t>{100, 120, 150, 200, 250, 300}));
}

TEST(Cpa, RankingTiesAndNan) {
  Correlations c{};
  c.fill(0.0);
  c[7] = -0.5;
  c[3] = 0.5;
  c[200] = std::numeric_limits<double>::quiet_NaN();
  c[9] = 0.25;
  const auto r = rank_guesses(c);
  EXPECT_EQ(r[0], 3);
  EXPECT_EQ(r[1], 7);
  EXPECT_EQ(r[2], 9);
  EXPECT_EQ(r[3], 0);
  EXPECT_EQ(r[255], 200);
}

std::vector<Correlations> trajectory(std::initializer_list<int> leaders,
                                     std::uint8_t key) {
  std::vector<Correlations> out;
  for (int lead : leaders) {
    Correlations c{};
    c.fill(0.01);
    c[key] = 0.2;
    if (lead != key) c[lead] = 0.3;
    out.push_back(c);
  }
  return out;
}

TEST(Cpa, MtdDefinition) {
  const std::vector<std::size_t> cps = {100, 200, 500, 1000};
  EXPECT_EQ(mtd(cps, trajectory({5, 5, 5, 5}, 5), 5), 100u);
  EXPECT_EQ(mtd(cps, trajectory({1, 2, 3, 4}, 5), 5), std::nullopt);
  // An early false lead and a later relapse: disclosure only once stable.
  EXPECT_EQ(mtd(cps, trajectory({5, 9, 5, 5}, 5), 5), 500u);
  EXPECT_EQ(mtd(cps, trajectory({5, 5, 5, 9}, 5), 5), std::nullopt);
  // A tie is not a strict first rank.
  auto tied = trajectory({5, 5, 5, 5}, 5);
  tied[3][6] = 0.2;
  EXPECT_EQ(mtd(cps, tied, 5), std::nullopt);
  EXPECT_THROW(mtd(std::vector<std::size_t>{100}, tied, 5), InvalidArgument);
}

TEST(Cpa, PredictionMatrixContents) {
  const auto tables = attack_tables(AttackKind::kAesFinalRound);
  const std::vector<std::uint8_t> data = {0x00, 0x10, 0xff};
  const PredictionMatrix m(tables[0], data);
  EXPECT_EQ(m.n_traces(), 3u);
  for (int k = 0; k < 256; ++k) {
    for (std::size_t t = 0; t < data.size(); ++t) {
      const int expect = hamming_weight(
          aes_inv_sbox(static_cast<std::uint8_t>(data[t] ^ k)));
      EXPECT_EQ(m.at(k, t), expect);
      EXPECT_LE(m.at(k, t), 8);
    }
  }
}

// The bucketed engine against an explicit 256 x n prediction matrix and
// the direct streaming Pearson on each row.
void expect_dual_route(const TraceSet& ts, AttackKind kind) {
  AttackOptions opts;
  opts.checkpoints = {ts.size()};
  const auto fast = run_attack(ts, kind, opts);
  const auto data = attack_data(ts, kind);
  const auto tables = attack_tables(kind);
  const auto y = attack_preprocess(ts, kind, opts.half_window);
  for (std::size_t b = 0; b < data.size(); ++b) {
    const PredictionMatrix m(tables[b], data[b]);
    for (int k = 0; k < 256; ++k) {
      const auto row = m.row(k);
      const std::vector<double> h(row.begin(), row.end());
      const double direct = pearson(h, y);
      EXPECT_NEAR(fast.corr[0][b][k], direct, 1e-10) << "byte " << b << " k " << k;
    }
  }
}

TEST(Cpa, BucketedEngineMatchesExplicitMatrixAes) {
  const auto ts = acquire_campaign(CipherId::kAes128, kKey, 700, AcquisitionSpec{},
                                   default_leakage(CipherId::kAes128, false), 3);
  expect_dual_route(ts, AttackKind::kAesFinalRound);
}

TEST(Cpa, BucketedEngineMatchesExplicitMatrixSkinny) {
  const auto ts =
      acquire_campaign(CipherId::kSkinny128, kKey, 700, AcquisitionSpec{},
                       default_leakage(CipherId::kSkinny128, true), 3, true);
  expect_dual_route(ts, AttackKind::kSkinnyFirstOrder);
  expect_dual_route(ts, AttackKind::kSkinnySecondOrder);
}

TEST(Cpa, NoiselessAesRecoversKey) {
  const auto ts = acquire_campaign(CipherId::kAes128, kKey, 1000,
                                   AcquisitionSpec{}, noiseless_leakage(), 1);
  AttackOptions opts;
  opts.true_key = last_round_key();
  const auto r = attack_aes_final_round(ts, opts);
  EXPECT_EQ(r.best_guess(), last_round_key());
  ASSERT_TRUE(r.mtd);
  EXPECT_LE(*r.mtd, 1000u);
  Block rk{};
  const auto g = r.best_guess();
  std::copy(g.begin(), g.end(), rk.begin());
  EXPECT_EQ(aes_master_key_from_last_round(rk), kKey);
  for (const auto& row : r.corr) {
    for (const auto& byte : row) {
      for (double c : byte) {
        EXPECT_GE(c, -1.0);
        EXPECT_LE(c, 1.0);
      }
    }
  }
}

TEST(Cpa, NoiselessSkinnyFirstOrderRecoversSubkey) {
  const auto ts = acquire_campaign(CipherId::kSkinny128, kKey, 2000,
                                   AcquisitionSpec{}, noiseless_leakage(), 1);
  const auto sk = skinny_round2_subkey(kKey);
  AttackOptions opts;
  opts.true_key.assign(sk.begin(), sk.end());
  const auto r = attack_skinny_first_order(ts, opts);
  EXPECT_EQ(r.best_guess(), opts.true_key);
}

TEST(Cpa, ShuffledPairingDestroysLeakage) {
  auto ts = acquire_campaign(CipherId::kAes128, kKey, 20000, AcquisitionSpec{},
                             noiseless_leakage(), 4);
  auto& v = ts.mutable_values();
  Rng rng(12);
  for (std::size_t i = v.size() - 1; i > 0; --i) {
    std::swap(v[i], v[rng.next_u64() % (i + 1)]);
  }
  AttackOptions opts;
  opts.true_key = last_round_key();
  const auto r = attack_aes_final_round(ts, opts);
  const double bound = 4.0 / std::sqrt(static_cast<double>(ts.size()));
  int recovered = 0;
  for (int b = 0; b < 16; ++b) {
    EXPECT_LT(std::fabs(r.corr.back()[b][opts.true_key[b]]), bound);
    recovered += r.best_guess()[b] == opts.true_key[b];
  }
  EXPECT_LE(recovered, 1);
}

TEST(Cpa, NoPhantomLeakageWithoutTheTrueKey) {
  // Values independent of the data: every guess must stay in the noise band.
  TraceSet ts(16);
  ts.meta.cipher = CipherId::kAes128;
  Rng rng(31);
  const std::size_t n = 100000;
  ts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Block c{};
    rng.fill(c);
    ts.push_back(c, rng.normal());
  }
  const auto r = attack_aes_final_round(ts, AttackOptions{{n}, 50, {}});
  double worst = 0.0;
  for (const auto& byte : r.corr.back()) {
    for (double c : byte) worst = std::max(worst, std::fabs(c));
  }
  EXPECT_LT(worst, 5.0 / std::sqrt(static_cast<double>(n)));
}

TEST(Cpa, RankingIsAffineInvariant) {
  auto ts = acquire_campaign(CipherId::kAes128, kKey, 2000, AcquisitionSpec{},
                             default_leakage(CipherId::kAes128, false), 8);
  const auto base = attack_aes_final_round(ts);
  for (double scale : {2.5, -0.75}) {
    auto t2 = ts;
    for (auto& v : t2.mutable_values()) v = scale * v + 123.0;
    const auto r = attack_aes_final_round(t2);
    for (std::size_t c = 0; c < base.checkpoints.size(); ++c) {
      for (std::size_t b = 0; b < 16; ++b) {
        EXPECT_EQ(r.ranking(c, b), base.ranking(c, b));
      }
    }
  }
}

TEST(Cpa, AttackMismatchAndTooFewTraces) {
  const auto aes = acquire_campaign(CipherId::kAes128, kKey, 50,
                                    AcquisitionSpec{}, noiseless_leakage(), 1);
  EXPECT_THROW(run_attack(aes, AttackKind::kSkinnySecondOrder), InvalidArgument);
  AttackOptions opts;
  opts.checkpoints = {100};
  EXPECT_THROW(run_attack(aes, AttackKind::kAesFinalRound, opts), InvalidArgument);
  opts.checkpoints = {20, 10};
  EXPECT_THROW(run_attack(aes, AttackKind::kAesFinalRound, opts), InvalidArgument);
  const auto sk = acquire_campaign(CipherId::kSkinny128, kKey, 50,
                                   AcquisitionSpec{}, noiseless_leakage(), 1);
  EXPECT_THROW(run_attack(sk, AttackKind::kAesFinalRound), InvalidArgument);
}

TEST(Cpa, SubsetMtd) {
  const auto ts = acquire_campaign(CipherId::kAes128, kKey, 10000,
                                   AcquisitionSpec{}, noiseless_leakage(), 2);
  AttackOptions opts;
  opts.true_key = last_round_key();
  const auto s = subset_mtd(ts, AttackKind::kAesFinalRound, opts, 10);
  EXPECT_EQ(s.subsets, 10u);
  EXPECT_EQ(s.disclosed, 10u);
  ASSERT_TRUE(s.mean_mtd);
  EXPECT_LE(*s.mean_mtd, 1000.0);
  EXPECT_THROW(subset_mtd(ts, AttackKind::kAesFinalRound, opts, 10000),
               InvalidArgument);
}

TEST(Cpa, CsvRoundTrip) {
  const auto ts = acquire_campaign(CipherId::kAes128, kKey, 500,
                                   AcquisitionSpec{}, noiseless_leakage(), 1);
  AttackOptions opts;
  opts.true_key = last_round_key();
  const auto r = attack_aes_final_round(ts, opts);
  const auto dir = std::filesystem::temp_directory_path() / "statica_cpa_test";
  std::filesystem::create_directories(dir);
  write_cpa_csv(r, dir / "r.csv");
  const auto back = read_cpa_csv(dir / "r.csv");
  EXPECT_EQ(back.attack, r.attack);
  EXPECT_EQ(back.checkpoints, r.checkpoints);
  EXPECT_EQ(back.true_key, r.true_key);
  EXPECT_EQ(back.byte_mtd, r.byte_mtd);
  EXPECT_EQ(back.mtd, r.mtd);
  for (std::size_t c = 0; c < r.checkpoints.size(); ++c) {
    for (std::size_t b = 0; b < 16; ++b) {
      EXPECT_EQ(back.ranking(c, b), r.ranking(c, b));
      for (int k = 0; k < 256; ++k) {
        EXPECT_NEAR(back.corr[c][b][k], r.corr[c][b][k], 1e-8);
      }
    }
  }
  std::ofstream(dir / "bad.csv") << "nonsense\n";
  EXPECT_THROW(read_cpa_csv(dir / "bad.csv"), FormatError);
}

}  // namespace
}  // namespace statica
