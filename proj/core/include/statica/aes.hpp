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
#include <cstdint>

#include "statica/hex.hpp"
#include "statica/snapshot.hpp"

namespace statica {

// Round-based AES-128: one round per clock cycle. Cycle 0 holds the whitened
// plaintext, cycle r the output of round r. The point of interest is the
// round-9 output, held between the penultimate and final clock edges.
inline constexpr std::size_t kAesCycles = 11;
inline constexpr std::size_t kAesPoiCycle = 9;

struct AesResult {
  Block ciphertext{};
  RoundTrace trace;
};

AesResult aes_encrypt(const Block& key, const Block& plaintext);
// Same cipher without building the trace.
Block aes_encrypt_block(const Block& key, const Block& plaintext);

std::uint8_t aes_sbox(std::uint8_t x);
std::uint8_t aes_inv_sbox(std::uint8_t x);

// InvSBox(c ^ k): the round-9 state byte behind ciphertext byte c under
// last-round key byte k.
std::uint8_t inv_subbytes_byte(std::uint8_t c, std::uint8_t k);

// Ciphertext index that state byte i lands on after the final ShiftRows
// (column-major state). Throws InvalidArgument for i outside 0..15.
int shift_row_index(int i);

std::array<Block, 11> aes_expand_key(const Block& key);
// Runs the key schedule backwards from the round-10 key.
Block aes_master_key_from_last_round(const Block& round10_key);

}  // namespace statica
