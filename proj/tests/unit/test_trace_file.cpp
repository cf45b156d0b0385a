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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "statica/error.hpp"
#include "statica/trace_file.hpp"

namespace statica {
namespace {

TraceSet sample_set() {
  TraceSet ts(16);
  ts.meta.cipher = CipherId::kSkinny128;
  ts.meta.masked = true;
  ts.meta.target = "skinny_masked";
  ts.meta.data_field = "plaintext";
  ts.meta.key_id = 0x1234567890abcdefULL;
  ts.meta.leakage.sigma_noise = 0.1;
  ts.meta.acquisition.offset = 12.5;
  ts.meta.seed = 99;
  ts.meta.protection = "async";
  for (int i = 0; i < 5; ++i) {
    Block b{};
    b[0] = static_cast<std::uint8_t>(i);
    b[15] = 0xee;
    ts.push_back(b, 0.1 * i - 3.0);
  }
  return ts;
}

TEST(TraceFile, MetadataRoundTrip) {
  const auto ts = sample_set();
  EXPECT_EQ(TraceMeta::parse(ts.meta.serialize()), ts.meta);
}

TEST(TraceFile, MetadataRejectsBadEntries) {
  auto text = sample_set().meta.serialize();
  EXPECT_THROW(TraceMeta::parse(text + "bogus=1\n"), FormatError);
  const auto pos = text.find("leakage.sigma_noise=");
  ASSERT_NE(pos, std::string::npos);
  std::string tampered = text;
  tampered.replace(pos, 20, "leakage.sigma_noise=9");
  EXPECT_THROW(TraceMeta::parse(tampered), FormatError);
}

TEST(TraceFile, BttrRoundTripIsBitIdentical) {
  const auto ts = sample_set();
  const auto bytes = encode_bttr(ts);
  EXPECT_EQ(bytes.substr(0, 4), "BTTR");
  const std::span<const std::uint8_t> view(
      reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size());
  const auto back = decode_bttr(view);
  EXPECT_EQ(back, ts);
  EXPECT_EQ(encode_bttr(back), bytes);
}

TEST(TraceFile, BttrRejectsCorruption) {
  const auto bytes = encode_bttr(sample_set());
  auto span_of = [](const std::string& s) {
    return std::span<const std::uint8_t>(
        reinterpret_cast<const std::uint8_t*>(s.data()), s.size());
  };
  EXPECT_THROW(decode_bttr(span_of(bytes.substr(0, bytes.size() - 1))),
               FormatError);
  EXPECT_THROW(decode_bttr(span_of(bytes.substr(0, 10))), FormatError);
  EXPECT_THROW(decode_bttr(span_of(bytes + "x")), FormatError);
  std::string magic = bytes;
  magic[0] = 'X';
  EXPECT_THROW(decode_bttr(span_of(magic)), FormatError);
  std::string version = bytes;
  version[4] = 9;
  EXPECT_THROW(decode_bttr(span_of(version)), FormatError);
}

TEST(TraceFile, LayoutIsLittleEndian) {
  TraceSet ts(1);
  ts.push_back(std::vector<std::uint8_t>{0xab}, 1.0);
  const auto bytes = encode_bttr(ts);
  // version u32, n u32, ct_len u8, metadata length u32
  EXPECT_EQ(static_cast<std::uint8_t>(bytes[4]), 1);
  EXPECT_EQ(static_cast<std::uint8_t>(bytes[8]), 1);
  EXPECT_EQ(static_cast<std::uint8_t>(bytes[12]), 1);
  // Trailing record: data byte then the IEEE-754 value 1.0.
  const std::string tail = bytes.substr(bytes.size() - 9);
  EXPECT_EQ(static_cast<std::uint8_t>(tail[0]), 0xab);
  EXPECT_EQ(static_cast<std::uint8_t>(tail[7]), 0xf0);
  EXPECT_EQ(static_cast<std::uint8_t>(tail[8]), 0x3f);
}

TEST(TraceFile, PushBackValidates) {
  TraceSet ts(16);
  EXPECT_THROW(ts.push_back(std::vector<std::uint8_t>(15), 1.0), InvalidArgument);
  EXPECT_THROW(ts.push_back(std::vector<std::uint8_t>(16),
                            std::numeric_limits<double>::quiet_NaN()),
               InvalidArgument);
}

TEST(TraceFile, FilesAndCsv) {
  const auto dir = std::filesystem::temp_directory_path() / "statica_trace_test";
  std::filesystem::create_directories(dir);
  const auto ts = sample_set();
  write_bttr(ts, dir / "t.bttr");
  EXPECT_EQ(read_bttr(dir / "t.bttr"), ts);
  write_trace_csv(ts, dir / "t.csv");
  std::ifstream f(dir / "t.csv");
  std::string header, first;
  std::getline(f, header);
  std::getline(f, first);
  EXPECT_EQ(header, "index,ciphertext_hex,value");
  EXPECT_EQ(first.substr(0, 35), "0,000000000000000000000000000000ee,");
  EXPECT_THROW(read_bttr(dir / "missing.bttr"), IoError);
}

}  // namespace
}  // namespace statica
