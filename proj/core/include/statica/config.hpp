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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "statica/hex.hpp"

namespace statica {

// Line-oriented `key = value` text with [section] headers. `#` and `;`
// start comments. Every lookup marks its key as used so that typos can be
// reported with their line number.
class ConfigFile {
 public:
  static ConfigFile parse(std::string_view text);
  static ConfigFile load(const std::filesystem::path& path);

  bool has_section(const std::string& section) const;
  // Line of the section header, 0 when absent.
  int section_line(const std::string& section) const;
  bool has(const std::string& section, const std::string& key) const;
  int line_of(const std::string& section, const std::string& key) const;

  std::optional<std::string> get(const std::string& section,
                                 const std::string& key) const;
  std::string require(const std::string& section, const std::string& key) const;

  // Typed getters throw ConfigError naming the offending line.
  double get_double(const std::string& section, const std::string& key,
                    double fallback) const;
  std::int64_t get_int(const std::string& section, const std::string& key,
                       std::int64_t fallback) const;
  // Decimal or 0x-prefixed hexadecimal.
  std::uint64_t get_u64(const std::string& section, const std::string& key,
                        std::uint64_t fallback) const;
  bool get_bool(const std::string& section, const std::string& key,
                bool fallback) const;
  Block get_block(const std::string& section, const std::string& key) const;
  // Comma-separated list; empty when absent.
  std::vector<double> get_doubles(const std::string& section,
                                  const std::string& key) const;
  std::vector<std::uint64_t> get_u64s(const std::string& section,
                                      const std::string& key) const;

  // Throws ConfigError for the first key or section never looked up.
  void reject_unused() const;

 private:
  struct Entry {
    std::string value;
    int line = 0;
    mutable bool used = false;
  };
  struct Section {
    int line = 0;
    mutable bool used = false;
    std::map<std::string, Entry> entries;
  };
  const Entry* find(const std::string& section, const std::string& key) const;
  std::map<std::string, Section> sections_;
};

}  // namespace statica
