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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "statica/hex.hpp"
#include "statica/leakage.hpp"
#include "statica/snapshot.hpp"

namespace statica {

struct TraceMeta {
  CipherId cipher = CipherId::kAes128;
  bool masked = false;
  std::string target;
  // "ciphertext" for AES campaigns, "plaintext" for SKINNY ones.
  std::string data_field = "ciphertext";
  std::uint64_t key_id = 0;
  LeakageParams leakage;
  AcquisitionSpec acquisition;
  std::uint64_t seed = 0;
  std::string protection = "none";

  // UTF-8 key=value lines.
  std::string serialize() const;
  // Throws FormatError on unknown or malformed entries.
  static TraceMeta parse(std::string_view text);

  bool operator==(const TraceMeta&) const = default;
};

// Ordered (data, value) records sharing one metadata block. Data bytes are
// stored contiguously with a fixed record length.
class TraceSet {
 public:
  TraceMeta meta;

  explicit TraceSet(std::uint8_t record_len = 16) : record_len_(record_len) {}

  std::size_t size() const { return values_.size(); }
  std::uint8_t record_len() const { return record_len_; }
  std::span<const std::uint8_t> data(std::size_t i) const {
    return {data_.data() + i * record_len_, record_len_};
  }
  Block block(std::size_t i) const;
  double value(std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }

  void reserve(std::size_t n);
  // Throws InvalidArgument on a length mismatch or a non-finite value.
  void push_back(std::span<const std::uint8_t> data, double value);

  bool operator==(const TraceSet&) const = default;

 private:
  std::uint8_t record_len_;
  std::vector<std::uint8_t> data_;
  std::vector<double> values_;
};

std::string encode_bttr(const TraceSet& ts);
// Throws FormatError for a bad magic, version, truncation or trailing data.
TraceSet decode_bttr(std::span<const std::uint8_t> bytes);

void write_bttr(const TraceSet& ts, const std::filesystem::path& path);
TraceSet read_bttr(const std::filesystem::path& path);
// Header `index,ciphertext_hex,value`.
void write_trace_csv(const TraceSet& ts, const std::filesystem::path& path);

}  // namespace statica
