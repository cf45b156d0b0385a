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
#include <cstddef>
#include <cstdint>
#include <span>

#include "statica/hex.hpp"
#include "statica/snapshot.hpp"

namespace statica {

// SKINNY-128-128, 40 rounds, single tweakey word. The cycle register sits
// after the S-box and constant layers, so cycle 0 is the plaintext and
// cycle r holds the S-box layer output of round r. Round 1 is therefore
// key-free and the first key material reaches the register in cycle 2.
inline constexpr std::size_t kSkinnyRounds = 40;
inline constexpr std::size_t kSkinnyCycles = kSkinnyRounds + 1;
inline constexpr std::size_t kSkinnyPoiCycle = 2;
// 16 bytes for the initial sharing plus 16 fresh bytes per S-box layer.
inline constexpr std::size_t kSkinnyMaskBytes = 16 + 16 * kSkinnyRounds;

struct SkinnyResult {
  Block ciphertext{};
  RoundTrace trace;
};

std::uint8_t skinny_sbox(std::uint8_t x);

SkinnyResult skinny_encrypt(const Block& key, const Block& plaintext);
Block skinny_encrypt_block(const Block& key, const Block& plaintext);

// Two-share masked variant. Linear layers act share-wise; each S-box
// recombines, substitutes and reshares with a fresh mask byte. Throws
// InvalidArgument when `mask` holds fewer than kSkinnyMaskBytes bytes.
SkinnyResult skinny_masked_encrypt(const Block& key, const Block& plaintext,
                                   std::span<const std::uint8_t> mask);

// State positions of cycle 2 that each of the 8 key bytes reaches first.
int skinny_round2_position(int byte_index);
// Plaintext-derived byte that is XORed with key byte `byte_index` before
// the round-2 S-box feeding skinny_round2_position(byte_index).
std::uint8_t skinny_round2_data(const Block& plaintext, int byte_index);
// Round-2 constant added at skinny_round2_position(byte_index).
std::uint8_t skinny_round2_constant(int byte_index);
// Predicted cycle-2 state byte at skinny_round2_position(byte_index) for a
// guess of key byte `byte_index`. Throws InvalidArgument unless 0..7.
std::uint8_t skinny_round2_prediction(const Block& plaintext,
                                      std::uint8_t subkey_guess,
                                      int byte_index);
// The 8 key bytes the round-2 attack recovers.
std::array<std::uint8_t, 8> skinny_round2_subkey(const Block& key);

}  // namespace statica
