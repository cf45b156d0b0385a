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
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "statica/hex.hpp"

namespace statica {

enum class CipherId { kAes128, kSkinny128 };

std::string_view cipher_name(CipherId id);
// Accepts "aes128" and "skinny128"; throws InvalidArgument otherwise.
CipherId parse_cipher(std::string_view name);

// One named hardware register held at a clock cycle. `sensitive` marks the
// register as leakage-contributing and as a target of the masked clear.
// Unshared registers use share_index -1; shares of a masked value use 0/1.
struct Register {
  std::string name;
  std::vector<std::uint8_t> bytes;
  bool sensitive = false;
  int share_index = -1;

  bool operator==(const Register&) const = default;
};

struct RegisterSnapshot {
  std::vector<Register> registers;

  const Register* find(std::string_view name) const;
  Register* find(std::string_view name);

  bool operator==(const RegisterSnapshot&) const = default;
};

// Hamming distance over the sensitive registers of two snapshots with the
// same layout. Throws InvalidArgument when the layouts differ.
int sensitive_hamming_distance(const RegisterSnapshot& a,
                               const RegisterSnapshot& b);

struct CipherState {
  CipherId cipher_id = CipherId::kAes128;
  int round_index = 0;
  Block state_bytes{};
  std::optional<std::pair<Block, Block>> shares;

  bool operator==(const CipherState&) const = default;
};

struct RoundTrace {
  std::vector<RegisterSnapshot> snapshots;
  std::vector<CipherState> states;
  std::size_t poi_cycle = 0;

  bool operator==(const RoundTrace&) const = default;
};

}  // namespace statica
