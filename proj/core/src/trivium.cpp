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

#include "statica/trivium.hpp"

#include "statica/error.hpp"
#include "statica/hex.hpp"

namespace statica {
namespace {

// Bits x(T + k - lag) for k = 0..63, where T is the next step's time.
inline std::uint64_t lagged(const std::array<std::uint64_t, 3>& h,
                            unsigned lag) {
  unsigned off = 192 - lag;
  unsigned w = off / 64, r = off % 64;
  if (r == 0) return h[w];
  return (h[w] >> r) | (h[w + 1] << (64 - r));
}

inline void push(std::array<std::uint64_t, 3>& h, std::uint64_t v) {
  h[0] = h[1];
  h[1] = h[2];
  h[2] = v;
}

// Sets the bit that entered `lag` steps before time 0.
inline void set_initial(std::array<std::uint64_t, 3>& h, unsigned lag) {
  unsigned pos = 192 - lag;
  h[pos / 64] |= std::uint64_t{1} << (pos % 64);
}

inline bool get_initial(const std::array<std::uint64_t, 3>& h, unsigned lag) {
  unsigned pos = 192 - lag;
  return (h[pos / 64] >> (pos % 64)) & 1;
}

}  // namespace

Trivium::Trivium(const Key& key, const Iv& iv, unsigned bits_per_cycle)
    : bits_per_cycle_(bits_per_cycle) {
  if (bits_per_cycle == 0) {
    throw InvalidArgument("trivium bits_per_cycle must be at least 1");
  }
  // s1..s80 hold the key with the last bit of the last byte in s1.
  for (unsigned i = 1; i <= 80; ++i) {
    unsigned n = 80 - i;
    if ((key[n / 8] >> (n % 8)) & 1) set_initial(a_, i);
    if ((iv[n / 8] >> (n % 8)) & 1) set_initial(b_, i);
  }
  set_initial(c_, 109);
  set_initial(c_, 110);
  set_initial(c_, 111);
  for (int i = 0; i < 4 * 288 / 64; ++i) step();
}

Trivium Trivium::from_seed(std::uint64_t seed, unsigned bits_per_cycle) {
  std::uint64_t s = seed;
  std::uint64_t w[3] = {splitmix64(s), splitmix64(s), splitmix64(s)};
  Key key{};
  Iv iv{};
  for (int i = 0; i < 8; ++i) {
    key[i] = static_cast<std::uint8_t>(w[0] >> (8 * i));
    iv[i] = static_cast<std::uint8_t>(w[1] >> (8 * i));
  }
  key[8] = static_cast<std::uint8_t>(w[2]);
  key[9] = static_cast<std::uint8_t>(w[2] >> 8);
  iv[8] = static_cast<std::uint8_t>(w[2] >> 16);
  iv[9] = static_cast<std::uint8_t>(w[2] >> 24);
  return Trivium(key, iv, bits_per_cycle);
}

std::uint64_t Trivium::step() {
  const std::uint64_t a66 = lagged(a_, 66), a69 = lagged(a_, 69),
                      a91 = lagged(a_, 91), a92 = lagged(a_, 92),
                      a93 = lagged(a_, 93);
  const std::uint64_t b69 = lagged(b_, 69), b78 = lagged(b_, 78),
                      b82 = lagged(b_, 82), b83 = lagged(b_, 83),
                      b84 = lagged(b_, 84);
  const std::uint64_t c66 = lagged(c_, 66), c87 = lagged(c_, 87),
                      c109 = lagged(c_, 109), c110 = lagged(c_, 110),
                      c111 = lagged(c_, 111);
  const std::uint64_t t1 = a66 ^ a93;
  const std::uint64_t t2 = b69 ^ b84;
  const std::uint64_t t3 = c66 ^ c111;
  const std::uint64_t z = t1 ^ t2 ^ t3;
  push(a_, t3 ^ (c109 & c110) ^ a69);
  push(b_, t1 ^ (a91 & a92) ^ b78);
  push(c_, t2 ^ (b82 & b83) ^ c87);
  return z;
}

std::uint64_t Trivium::next64() {
  if (buf_len_ == 0) return step();
  std::uint64_t fresh = step();
  std::uint64_t out = buf_ | (fresh << buf_len_);
  buf_ = fresh >> (64 - buf_len_);
  return out;
}

int Trivium::take_bit() {
  if (buf_len_ == 0) {
    buf_ = step();
    buf_len_ = 64;
  }
  int bit = static_cast<int>(buf_ & 1);
  buf_ >>= 1;
  --buf_len_;
  return bit;
}

void Trivium::fill(std::span<std::uint8_t> out) {
  std::size_t i = 0;
  if (buf_len_ % 8 == 0) {
    while (i < out.size() && buf_len_ > 0) {
      out[i++] = static_cast<std::uint8_t>(buf_);
      buf_ >>= 8;
      buf_len_ -= 8;
    }
    while (out.size() - i >= 8) {
      std::uint64_t w = step();
      for (int k = 0; k < 8; ++k) {
        out[i++] = static_cast<std::uint8_t>(w >> (8 * k));
      }
    }
  }
  for (; i < out.size(); ++i) {
    std::uint8_t b = 0;
    for (int k = 0; k < 8; ++k) b |= static_cast<std::uint8_t>(take_bit() << k);
    out[i] = b;
  }
}

std::vector<std::uint8_t> Trivium::next_bits(std::size_t n) {
  if (n == 0) throw InvalidArgument("trivium draw must be at least one bit");
  std::vector<std::uint8_t> out((n + 7) / 8);
  std::size_t whole = n / 8;
  fill(std::span<std::uint8_t>(out.data(), whole));
  for (std::size_t k = 0; k < n % 8; ++k) {
    out[whole] |= static_cast<std::uint8_t>(take_bit() << k);
  }
  return out;
}

std::bitset<288> Trivium::register_bits() const {
  std::bitset<288> s;
  for (unsigned i = 1; i <= 93; ++i) s[i - 1] = get_initial(a_, i);
  for (unsigned i = 1; i <= 84; ++i) s[93 + i - 1] = get_initial(b_, i);
  for (unsigned i = 1; i <= 111; ++i) s[177 + i - 1] = get_initial(c_, i);
  return s;
}

}  // namespace statica
