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
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace statica {

using Block = std::array<std::uint8_t, 16>;

std::string to_hex(std::span<const std::uint8_t> bytes);
// Throws InvalidArgument on odd length or non-hex characters.
std::vector<std::uint8_t> from_hex(std::string_view hex);
Block block_from_hex(std::string_view hex);

// 64-bit FNV-1a, used for key ids and parameter digests in trace metadata.
std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes);
std::uint64_t fnv1a64(std::string_view text);

// SplitMix64 step; derives independent seed lanes from one campaign seed.
std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace statica
