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

#include "statica/skinny.hpp"

#include <string>

#include "statica/error.hpp"

namespace statica {
namespace {

// Bit-level S-box circuit: four NOR/XOR layers with bit permutations.
std::uint8_t sbox_circuit(std::uint8_t x) {
  int b[8];
  for (int i = 0; i < 8; ++i) b[i] = (x >> i) & 1;
  for (int it = 0; it < 4; ++it) {
    b[4] ^= (1 - b[7]) & (1 - b[6]);
    b[0] ^= (1 - b[3]) & (1 - b[2]);
    if (it < 3) {
      int p[8] = {b[5], b[3], b[0], b[4], b[6], b[7], b[1], b[2]};
      for (int i = 0; i < 8; ++i) b[i] = p[i];
    } else {
      std::swap(b[1], b[2]);
    }
  }
  std::uint8_t out = 0;
  for (int i = 0; i < 8; ++i) out |= static_cast<std::uint8_t>(b[i] << i);
  return out;
}

const std::array<std::uint8_t, 256>& sbox_table() {
  static const auto table = [] {
    std::array<std::uint8_t, 256> t{};
    for (int x = 0; x < 256; ++x) {
      t[x] = sbox_circuit(static_cast<std::uint8_t>(x));
    }
    return t;
  }();
  return table;
}

constexpr int kShift[16] = {0, 1, 2, 3, 7, 4, 5, 6, 10, 11, 8, 9, 13, 14, 15, 12};
constexpr int kTkPerm[16] = {9, 15, 8, 13, 10, 14, 12, 11,
                             0, 1,  2, 3,  4,  5,  6,  7};

std::uint8_t next_rc(std::uint8_t rc) {
  return static_cast<std::uint8_t>(((rc << 1) & 0x3F) |
                                   (((rc >> 5) ^ (rc >> 4) ^ 1) & 1));
}

void add_constants(Block& s, std::uint8_t rc) {
  s[0] ^= rc & 0xF;
  s[4] ^= (rc >> 4) & 0x3;
  s[8] ^= 0x2;
}

void add_tweakey(Block& s, const Block& tk) {
  for (int i = 0; i < 8; ++i) s[i] ^= tk[i];
}

void shift_rows(Block& s) {
  Block t{};
  for (int i = 0; i < 16; ++i) t[i] = s[kShift[i]];
  s = t;
}

void mix_columns(Block& s) {
  for (int c = 0; c < 4; ++c) {
    std::uint8_t r0 = s[c], r1 = s[4 + c], r2 = s[8 + c], r3 = s[12 + c];
    s[c] = r0 ^ r2 ^ r3;
    s[4 + c] = r0;
    s[8 + c] = r1 ^ r2;
    s[12 + c] = r0 ^ r2;
  }
}

void permute_tweakey(Block& tk) {
  Block t{};
  for (int i = 0; i < 16; ++i) t[i] = tk[kTkPerm[i]];
  tk = t;
}

std::vector<std::uint8_t> to_vec(const Block& b) {
  return std::vector<std::uint8_t>(b.begin(), b.end());
}

std::vector<std::uint8_t> pick_targets(const Block& b) {
  std::vector<std::uint8_t> out(8);
  for (int i = 0; i < 8; ++i) out[i] = b[skinny_round2_position(i)];
  return out;
}

RegisterSnapshot plain_snapshot(const Block& s, const Block& tk) {
  RegisterSnapshot snap;
  snap.registers.push_back({"state", to_vec(s), true, -1});
  snap.registers.push_back({"key", to_vec(tk), false, -1});
  return snap;
}

// The full state shares are kept for the invariant checks; the leakage
// source is the S-box pipeline register holding the targeted bytes.
RegisterSnapshot masked_snapshot(const Block& s0, const Block& s1,
                                 const Block& tk) {
  RegisterSnapshot snap;
  snap.registers.push_back({"sbox.s0", pick_targets(s0), true, 0});
  snap.registers.push_back({"sbox.s1", pick_targets(s1), true, 1});
  snap.registers.push_back({"state.s0", to_vec(s0), false, 0});
  snap.registers.push_back({"state.s1", to_vec(s1), false, 1});
  snap.registers.push_back({"key", to_vec(tk), false, -1});
  return snap;
}

Block xor_blocks(const Block& a, const Block& b) {
  Block r{};
  for (int i = 0; i < 16; ++i) r[i] = a[i] ^ b[i];
  return r;
}

template <bool kTrace>
Block encrypt_impl(const Block& key, const Block& pt, RoundTrace* trace) {
  const auto& sb = sbox_table();
  Block s = pt;
  Block tk = key;
  std::uint8_t rc = 0;
  if constexpr (kTrace) {
    trace->snapshots.push_back(plain_snapshot(s, tk));
    trace->states.push_back({CipherId::kSkinny128, 0, s, std::nullopt});
  }
  for (std::size_t r = 1; r <= kSkinnyRounds; ++r) {
    rc = next_rc(rc);
    for (auto& b : s) b = sb[b];
    add_constants(s, rc);
    if constexpr (kTrace) {
      trace->snapshots.push_back(plain_snapshot(s, tk));
      trace->states.push_back(
          {CipherId::kSkinny128, static_cast<int>(r), s, std::nullopt});
    }
    add_tweakey(s, tk);
    shift_rows(s);
    mix_columns(s);
    permute_tweakey(tk);
  }
  return s;
}

}  // namespace

std::uint8_t skinny_sbox(std::uint8_t x) { return sbox_table()[x]; }

SkinnyResult skinny_encrypt(const Block& key, const Block& plaintext) {
  SkinnyResult out;
  out.trace.snapshots.reserve(kSkinnyCycles);
  out.trace.states.reserve(kSkinnyCycles);
  out.ciphertext = encrypt_impl<true>(key, plaintext, &out.trace);
  out.trace.poi_cycle = kSkinnyPoiCycle;
  return out;
}

Block skinny_encrypt_block(const Block& key, const Block& plaintext) {
  return encrypt_impl<false>(key, plaintext, nullptr);
}

SkinnyResult skinny_masked_encrypt(const Block& key, const Block& plaintext,
                                   std::span<const std::uint8_t> mask) {
  if (mask.size() < kSkinnyMaskBytes) {
    throw InvalidArgument("mask stream exhausted: need " +
                          std::to_string(kSkinnyMaskBytes) + " bytes, got " +
                          std::to_string(mask.size()));
  }
  const auto& sb = sbox_table();
  std::size_t pos = 0;
  Block s0{}, s1{};
  for (int i = 0; i < 16; ++i) {
    s1[i] = mask[pos++];
    s0[i] = plaintext[i] ^ s1[i];
  }
  Block tk = key;
  std::uint8_t rc = 0;
  SkinnyResult out;
  out.trace.snapshots.reserve(kSkinnyCycles);
  out.trace.states.reserve(kSkinnyCycles);
  auto record = [&](int round) {
    out.trace.snapshots.push_back(masked_snapshot(s0, s1, tk));
    out.trace.states.push_back(
        {CipherId::kSkinny128, round, xor_blocks(s0, s1), std::pair{s0, s1}});
  };
  record(0);
  for (std::size_t r = 1; r <= kSkinnyRounds; ++r) {
    rc = next_rc(rc);
    for (int i = 0; i < 16; ++i) {
      std::uint8_t x = s0[i] ^ s1[i];
      std::uint8_t m = mask[pos++];
      s1[i] = m;
      s0[i] = sb[x] ^ m;
    }
    add_constants(s0, rc);
    record(static_cast<int>(r));
    add_tweakey(s0, tk);
    shift_rows(s0);
    shift_rows(s1);
    mix_columns(s0);
    mix_columns(s1);
    permute_tweakey(tk);
  }
  out.ciphertext = xor_blocks(s0, s1);
  out.trace.poi_cycle = kSkinnyPoiCycle;
  return out;
}

int skinny_round2_position(int byte_index) {
  if (byte_index < 0 || byte_index > 7) {
    throw InvalidArgument("round-2 byte index out of range: " +
                          std::to_string(byte_index));
  }
  if (byte_index < 4) return 4 + byte_index;
  return 8 + (byte_index - 4 + 1) % 4;
}

std::uint8_t skinny_round2_data(const Block& plaintext, int byte_index) {
  skinny_round2_position(byte_index);
  const auto& sb = sbox_table();
  // Round-1 S-box layer output, which carries no key material.
  Block s1{};
  for (int i = 0; i < 16; ++i) s1[i] = sb[plaintext[i]];
  add_constants(s1, next_rc(0));
  if (byte_index < 4) return s1[byte_index];
  int c = byte_index - 4;
  return s1[4 + c] ^ s1[8 + (c + 3) % 4];
}

std::uint8_t skinny_round2_constant(int byte_index) {
  std::uint8_t rc = next_rc(next_rc(0));
  Block k{};
  add_constants(k, rc);
  return k[skinny_round2_position(byte_index)];
}

std::uint8_t skinny_round2_prediction(const Block& plaintext,
                                      std::uint8_t subkey_guess,
                                      int byte_index) {
  std::uint8_t d = skinny_round2_data(plaintext, byte_index);
  return sbox_table()[d ^ subkey_guess] ^ skinny_round2_constant(byte_index);
}

std::array<std::uint8_t, 8> skinny_round2_subkey(const Block& key) {
  std::array<std::uint8_t, 8> k{};
  for (int i = 0; i < 8; ++i) k[i] = key[i];
  return k;
}

}  // namespace statica
