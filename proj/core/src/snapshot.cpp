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

#include "statica/snapshot.hpp"

#include <bit>

#include "statica/error.hpp"

namespace statica {

std::string_view cipher_name(CipherId id) {
  switch (id) {
    case CipherId::kAes128:
      return "aes128";
    case CipherId::kSkinny128:
      return "skinny128";
  }
  return "unknown";
}

CipherId parse_cipher(std::string_view name) {
  if (name == "aes128") return CipherId::kAes128;
  if (name == "skinny128") return CipherId::kSkinny128;
  throw InvalidArgument("unknown cipher: " + std::string(name));
}

const Register* RegisterSnapshot::find(std::string_view name) const {
  for (const auto& r : registers) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

Register* RegisterSnapshot::find(std::string_view name) {
  for (auto& r : registers) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

int sensitive_hamming_distance(const RegisterSnapshot& a,
                               const RegisterSnapshot& b) {
  if (a.registers.size() != b.registers.size()) {
    throw InvalidArgument("snapshot layouts differ");
  }
  int hd = 0;
  for (std::size_t i = 0; i < a.registers.size(); ++i) {
    const auto& ra = a.registers[i];
    const auto& rb = b.registers[i];
    if (ra.name != rb.name || ra.bytes.size() != rb.bytes.size()) {
      throw InvalidArgument("snapshot layouts differ at register " + ra.name);
    }
    if (!ra.sensitive) continue;
    for (std::size_t j = 0; j < ra.bytes.size(); ++j) {
      hd += std::popcount(static_cast<unsigned>(ra.bytes[j] ^ rb.bytes[j]));
    }
  }
  return hd;
}

}  // namespace statica
