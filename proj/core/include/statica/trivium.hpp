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

#include <array>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace statica {

// Trivium keystream generator computing 64 state updates per step. Key and
// IV follow the eSTREAM byte order; keystream bits are packed LSB-first.
// Bits left over from a step are buffered, so the stream does not depend
// on how it is split into draws.
class Trivium {
 public:
  using Key = std::array<std::uint8_t, 10>;
  using Iv = std::array<std::uint8_t, 10>;

  Trivium(const Key& key, const Iv& iv, unsigned bits_per_cycle = 64);
  // Derives key and IV from a 64-bit seed with SplitMix64.
  static Trivium from_seed(std::uint64_t seed, unsigned bits_per_cycle = 64);

  unsigned bits_per_cycle() const { return bits_per_cycle_; }

  // Next n keystream bits, packed LSB-first into ceil(n/8) bytes.
  std::vector<std::uint8_t> next_bits(std::size_t n);
  // Next 8*n bits as bytes.
  void fill(std::span<std::uint8_t> out);
  // One hardware cycle worth of bits (bits_per_cycle).
  std::vector<std::uint8_t> next_cycle() { return next_bits(bits_per_cycle_); }
  std::uint64_t next64();

  // The 288 state bits s1..s288 (index 0 = s1), excluding buffered output.
  std::bitset<288> register_bits() const;

 private:
  std::uint64_t step();
  int take_bit();

  // Each register keeps the last 192 bits that entered it, oldest first.
  std::array<std::uint64_t, 3> a_{}, b_{}, c_{};
  std::uint64_t buf_ = 0;
  unsigned buf_len_ = 0;
  unsigned bits_per_cycle_;
};

}  // namespace statica
