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

#include "statica/aes.hpp"
#include "statica/campaign.hpp"
#include "statica/error.hpp"
#include "statica/random.hpp"
#include "statica/skinny.hpp"
#include "statica/stats.hpp"

namespace statica {
namespace {

const Block kKey = block_from_hex("2b7e151628aed2a6abf7158809cf4f3c");

CampaignSpec spec_for(CipherId c, bool masked, Protection p, std::size_t n) {
  CampaignSpec s;
  s.cipher = c;
  s.masked = masked;
  s.key = kKey;
  s.n_traces = n;
  s.leakage = default_leakage(c, masked);
  s.protection = p;
  s.seed = 5;
  return s;
}

TEST(Campaign, SingleTraceMatchesCipher) {
  std::vector<Block> pts;
  auto spec = spec_for(CipherId::kAes128, false, Protection::kNone, 1);
  const auto ts = acquire_campaign(spec, [&](const TraceObservation& o) {
    pts.push_back(o.plaintext);
    EXPECT_EQ(o.ciphertext, aes_encrypt_block(kKey, o.plaintext));
    EXPECT_EQ(o.monitor, nullptr);
  });
  ASSERT_EQ(ts.size(), 1u);
  EXPECT_EQ(ts.block(0), aes_encrypt_block(kKey, pts[0]));
  EXPECT_EQ(ts.meta.data_field, "ciphertext");
  EXPECT_EQ(ts.meta.key_id, fnv1a64(kKey));
}

TEST(Campaign, SkinnyStoresPlaintexts) {
  auto spec = spec_for(CipherId::kSkinny128, true, Protection::kNone, 3);
  std::vector<Block> pts;
  const auto ts = acquire_campaign(
      spec, [&](const TraceObservation& o) { pts.push_back(o.plaintext); });
  EXPECT_EQ(ts.meta.data_field, "plaintext");
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(ts.block(i), pts[i]);
}

TEST(Campaign, EqualSeedsGiveIdenticalSets) {
  auto spec = spec_for(CipherId::kAes128, false, Protection::kNone, 200);
  EXPECT_EQ(acquire_campaign(spec), acquire_campaign(spec));
  auto other = spec;
  other.seed = 6;
  EXPECT_NE(acquire_campaign(spec).values(), acquire_campaign(other).values());
}

TEST(Campaign, NoiselessValuesAreStaticLevels) {
  auto spec = spec_for(CipherId::kAes128, false, Protection::kNone, 50);
  spec.leakage = noiseless_leakage();
  acquire_campaign(spec, [&](const TraceObservation& o) {
    EXPECT_DOUBLE_EQ(o.value, static_level(o.poi, spec.leakage));
  });
}

TEST(Campaign, WarmupOnlyShiftsDrift) {
  auto a = spec_for(CipherId::kAes128, false, Protection::kNone, 20);
  a.leakage.drift_step = 0.0;
  auto b = a;
  b.acquisition.warmup_traces = 0;
  EXPECT_EQ(acquire_campaign(a).values(), acquire_campaign(b).values());
}

TEST(Campaign, NonZeroInputsAddLeakage) {
  auto spec = spec_for(CipherId::kAes128, false, Protection::kNone, 20);
  spec.leakage = noiseless_leakage();
  spec.acquisition.zero_inputs = false;
  acquire_campaign(spec, [&](const TraceObservation& o) {
    EXPECT_NE(o.poi.find("input"), nullptr);
    EXPECT_GE(o.value, static_level(o.poi, spec.leakage) - 1e-9);
  });
}

class ProtectedCampaign
    : public ::testing::TestWithParam<std::tuple<CipherId, Protection, int>> {};

TEST_P(ProtectedCampaign, ClearedRegistersHoldRngWords) {
  const auto [cipher, prot, level] = GetParam();
  const bool masked = cipher == CipherId::kSkinny128;
  auto spec = spec_for(cipher, masked, prot, 30);
  spec.stop_level = level;
  std::size_t checked = 0;
  acquire_campaign(spec, [&](const TraceObservation& o) {
    ASSERT_NE(o.monitor, nullptr);
    ASSERT_TRUE(o.monitor->cleared_with_randomness);
    std::vector<std::uint8_t> held;
    for (const auto& r : o.measured.registers) {
      if (r.sensitive && r.share_index <= 0) {
        held.insert(held.end(), r.bytes.begin(), r.bytes.end());
      }
    }
    ASSERT_LE(held.size(), o.monitor->clear_words.size());
    EXPECT_TRUE(std::equal(held.begin(), held.end(),
                           o.monitor->clear_words.begin()));
    EXPECT_TRUE(o.monitor->post_stop_edges.empty());
    ++checked;
  });
  EXPECT_EQ(checked, 30u);
}

INSTANTIATE_TEST_SUITE_P(
    Targets, ProtectedCampaign,
    ::testing::Values(
        std::make_tuple(CipherId::kAes128, Protection::kAsync, 0),
        std::make_tuple(CipherId::kAes128, Protection::kAsync, 1),
        std::make_tuple(CipherId::kAes128, Protection::kPll, 0),
        std::make_tuple(CipherId::kSkinny128, Protection::kAsync, 0),
        std::make_tuple(CipherId::kSkinny128, Protection::kPll, 1)));

TEST(Campaign, ClearWordsFollowTheClearSeed) {
  auto spec = spec_for(CipherId::kAes128, false, Protection::kAsync, 3);
  Trivium rng = Trivium::from_seed(campaign_clear_seed(spec), 128);
  acquire_campaign(spec, [&](const TraceObservation& o) {
    EXPECT_EQ(o.monitor->clear_words, rng.next_bits(128));
  });
}

TEST(Campaign, Validation) {
  auto spec = spec_for(CipherId::kAes128, true, Protection::kNone, 1);
  EXPECT_THROW(acquire_campaign(spec), InvalidArgument);
  spec = spec_for(CipherId::kAes128, false, Protection::kNone, 0);
  EXPECT_THROW(acquire_campaign(spec), InvalidArgument);
  spec = spec_for(CipherId::kAes128, false, Protection::kAsync, 1);
  spec.monitor.n_taps = 3;
  EXPECT_THROW(acquire_campaign(spec), InvalidArgument);
}

}  // namespace
}  // namespace statica
