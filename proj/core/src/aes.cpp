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

#include "statica/aes.hpp"

#include "statica/error.hpp"

namespace statica {
namespace {

constexpr std::uint8_t xtime(std::uint8_t x) {
  return static_cast<std::uint8_t>((x << 1) ^ ((x & 0x80) ? 0x1B : 0x00));
}

constexpr std::uint8_t gmul(std::uint8_t a, std::uint8_t b) {
  std::uint8_t p = 0;
  while (b) {
    if (b & 1) p ^= a;
    a = xtime(a);
    b >>= 1;
  }
  return p;
}

struct Tables {
  std::array<std::uint8_t, 256> sbox{};
  std::array<std::uint8_t, 256> inv{};
};

// Multiplicative inverse followed by the affine map.
constexpr Tables make_tables() {
  Tables t;
  for (int x = 0; x < 256; ++x) {
    std::uint8_t inv = 0;
    for (int y = 1; y < 256 && x != 0; ++y) {
      if (gmul(static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(y)) ==
          1) {
        inv = static_cast<std::uint8_t>(y);
        break;
      }
    }
    std::uint8_t s = inv;
    for (int r = 1; r <= 4; ++r) {
      s ^= static_cast<std::uint8_t>((inv << r) | (inv >> (8 - r)));
    }
    s ^= 0x63;
    t.sbox[x] = s;
    t.inv[s] = static_cast<std::uint8_t>(x);
  }
  return t;
}

const Tables& tables() {
  static const Tables t = make_tables();
  return t;
}

void sub_bytes(Block& s) {
  for (auto& b : s) b = tables().sbox[b];
}

void shift_rows(Block& s) {
  Block t = s;
  for (int i = 0; i < 16; ++i) t[shift_row_index(i)] = s[i];
  s = t;
}

void mix_columns(Block& s) {
  for (int c = 0; c < 4; ++c) {
    std::uint8_t* col = &s[4 * c];
    std::uint8_t a0 = col[0], a1 = col[1], a2 = col[2], a3 = col[3];
    col[0] = gmul(a0, 2) ^ gmul(a1, 3) ^ a2 ^ a3;
    col[1] = a0 ^ gmul(a1, 2) ^ gmul(a2, 3) ^ a3;
    col[2] = a0 ^ a1 ^ gmul(a2, 2) ^ gmul(a3, 3);
    col[3] = gmul(a0, 3) ^ a1 ^ a2 ^ gmul(a3, 2);
  }
}

void add_key(Block& s, const Block& k) {
  for (int i = 0; i < 16; ++i) s[i] ^= k[i];
}

constexpr std::array<std::uint8_t, 10> kRcon = {0x01, 0x02, 0x04, 0x08, 0x10,
                                                0x20, 0x40, 0x80, 0x1B, 0x36};

RegisterSnapshot make_snapshot(const Block& state, const Block& round_key) {
  RegisterSnapshot snap;
  snap.registers.push_back(
      {"state", std::vector<std::uint8_t>(state.begin(), state.end()), true,
       -1});
  snap.registers.push_back(
      {"key", std::vector<std::uint8_t>(round_key.begin(), round_key.end()),
       false, -1});
  return snap;
}

template <bool kTrace>
Block encrypt_impl(const Block& key, const Block& pt, RoundTrace* trace) {
  auto rk = aes_expand_key(key);
  Block s = pt;
  add_key(s, rk[0]);
  auto record = [&](int round) {
    if constexpr (kTrace) {
      trace->snapshots.push_back(make_snapshot(s, rk[round]));
      trace->states.push_back({CipherId::kAes128, round, s, std::nullopt});
    }
  };
  record(0);
  for (int r = 1; r <= 10; ++r) {
    sub_bytes(s);
    shift_rows(s);
    if (r != 10) mix_columns(s);
    add_key(s, rk[r]);
    record(r);
  }
  return s;
}

}  // namespace

std::uint8_t aes_sbox(std::uint8_t x) { return tables().sbox[x]; }
std::uint8_t aes_inv_sbox(std::uint8_t x) { return tables().inv[x]; }

std::uint8_t inv_subbytes_byte(std::uint8_t c, std::uint8_t k) {
  return tables().inv[c ^ k];
}

int shift_row_index(int i) {
  if (i < 0 || i > 15) {
    throw InvalidArgument("state byte index out of range: " +
                          std::to_string(i));
  }
  int row = i % 4;
  int col = i / 4;
  return 4 * ((col - row) & 3) + row;
}

std::array<Block, 11> aes_expand_key(const Block& key) {
  std::array<Block, 11> rk{};
  rk[0] = key;
  for (int r = 1; r <= 10; ++r) {
    const Block& p = rk[r - 1];
    Block& k = rk[r];
    std::uint8_t t[4] = {aes_sbox(p[13]), aes_sbox(p[14]), aes_sbox(p[15]),
                         aes_sbox(p[12])};
    t[0] ^= kRcon[r - 1];
    for (int i = 0; i < 4; ++i) k[i] = p[i] ^ t[i];
    for (int i = 4; i < 16; ++i) k[i] = p[i] ^ k[i - 4];
  }
  return rk;
}

Block aes_master_key_from_last_round(const Block& round10_key) {
  Block k = round10_key;
  for (int r = 10; r >= 1; --r) {
    Block p{};
    for (int i = 15; i >= 4; --i) p[i] = k[i] ^ k[i - 4];
    std::uint8_t t[4] = {aes_sbox(p[13]), aes_sbox(p[14]), aes_sbox(p[15]),
                         aes_sbox(p[12])};
    t[0] ^= kRcon[r - 1];
    for (int i = 0; i < 4; ++i) p[i] = k[i] ^ t[i];
    k = p;
  }
  return k;
}

AesResult aes_encrypt(const Block& key, const Block& plaintext) {
  AesResult out;
  out.trace.snapshots.reserve(kAesCycles);
  out.trace.states.reserve(kAesCycles);
  out.ciphertext = encrypt_impl<true>(key, plaintext, &out.trace);
  out.trace.poi_cycle = kAesPoiCycle;
  return out;
}

Block aes_encrypt_block(const Block& key, const Block& plaintext) {
  return encrypt_impl<false>(key, plaintext, nullptr);
}

}  // namespace statica
