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

#include "statica/trace_file.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "statica/error.hpp"

namespace statica {
namespace {

constexpr char kMagic[4] = {'B', 'T', 'T', 'R'};
constexpr std::uint32_t kVersion = 1;

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>(v >> (8 * i)));
}

void put_f64(std::string& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<char>(bits >> (8 * i)));
  }
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> b) : b_(b) {}

  std::span<const std::uint8_t> take(std::size_t n, const char* what) {
    if (b_.size() - pos_ < n) {
      throw FormatError(std::string("truncated trace file while reading ") +
                        what);
    }
    auto s = b_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint32_t u32(const char* what) {
    auto s = take(4, what);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{s[i]} << (8 * i);
    return v;
  }
  double f64(const char* what) {
    auto s = take(8, what);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{s[i]} << (8 * i);
    return std::bit_cast<double>(v);
  }
  bool done() const { return pos_ == b_.size(); }

 private:
  std::span<const std::uint8_t> b_;
  std::size_t pos_ = 0;
};

double parse_double(std::string_view key, const std::string& v) {
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing");
    return d;
  } catch (const std::exception&) {
    throw FormatError("bad number for metadata key " + std::string(key));
  }
}

std::uint64_t parse_u64(std::string_view key, const std::string& v) {
  try {
    std::size_t used = 0;
    auto x = std::stoull(v, &used, 0);
    if (used != v.size()) throw std::invalid_argument("trailing");
    return x;
  } catch (const std::exception&) {
    throw FormatError("bad integer for metadata key " + std::string(key));
  }
}

bool parse_bool(std::string_view key, const std::string& v) {
  if (v == "1" || v == "true") return true;
  if (v == "0" || v == "false") return false;
  throw FormatError("bad boolean for metadata key " + std::string(key));
}

}  // namespace

std::string TraceMeta::serialize() const {
  std::ostringstream os;
  char id[19];
  std::snprintf(id, sizeof(id), "0x%016llx",
                static_cast<unsigned long long>(key_id));
  char dig[19];
  std::snprintf(dig, sizeof(dig), "0x%016llx",
                static_cast<unsigned long long>(leakage.digest()));
  os << "cipher=" << cipher_name(cipher) << "\n"
     << "masked=" << (masked ? 1 : 0) << "\n"
     << "target=" << target << "\n"
     << "data_field=" << data_field << "\n"
     << "key_id=" << id << "\n"
     << "params_digest=" << dig << "\n"
     << "seed=" << seed << "\n"
     << "protection=" << protection << "\n";
  std::istringstream lp(leakage.serialize());
  for (std::string line; std::getline(lp, line);) {
    os << "leakage." << line << "\n";
  }
  os << "acquisition.offset=" << fmt_double(acquisition.offset) << "\n"
     << "acquisition.window=" << fmt_double(acquisition.window) << "\n"
     << "acquisition.zero_inputs=" << (acquisition.zero_inputs ? 1 : 0) << "\n"
     << "acquisition.warmup_traces=" << acquisition.warmup_traces << "\n";
  return os.str();
}

TraceMeta TraceMeta::parse(std::string_view text) {
  TraceMeta m;
  std::istringstream is{std::string(text)};
  std::optional<std::uint64_t> digest;
  for (std::string line; std::getline(is, line);) {
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw FormatError("metadata line without '=': " + line);
    }
    std::string k = line.substr(0, eq);
    std::string v = line.substr(eq + 1);
    if (k == "cipher") {
      try {
        m.cipher = parse_cipher(v);
      } catch (const InvalidArgument& e) {
        throw FormatError(e.what());
      }
    } else if (k == "masked") {
      m.masked = parse_bool(k, v);
    } else if (k == "target") {
      m.target = v;
    } else if (k == "data_field") {
      if (v != "ciphertext" && v != "plaintext") {
        throw FormatError("unknown data_field: " + v);
      }
      m.data_field = v;
    } else if (k == "key_id") {
      m.key_id = parse_u64(k, v);
    } else if (k == "params_digest") {
      digest = parse_u64(k, v);
    } else if (k == "seed") {
      m.seed = parse_u64(k, v);
    } else if (k == "protection") {
      m.protection = v;
    } else if (k == "leakage.alpha") {
      m.leakage.alpha = parse_double(k, v);
    } else if (k == "leakage.sigma_noise") {
      m.leakage.sigma_noise = parse_double(k, v);
    } else if (k == "leakage.mem_gamma") {
      m.leakage.mem_gamma = parse_double(k, v);
    } else if (k == "leakage.mem_tau") {
      m.leakage.mem_tau = parse_double(k, v);
    } else if (k == "leakage.drift_step") {
      m.leakage.drift_step = parse_double(k, v);
    } else if (k == "leakage.temp_coeff") {
      m.leakage.temp_coeff = parse_double(k, v);
    } else if (k == "leakage.sample_rate") {
      m.leakage.sample_rate = parse_double(k, v);
    } else if (k == "acquisition.offset") {
      m.acquisition.offset = parse_double(k, v);
    } else if (k == "acquisition.window") {
      m.acquisition.window = parse_double(k, v);
    } else if (k == "acquisition.zero_inputs") {
      m.acquisition.zero_inputs = parse_bool(k, v);
    } else if (k == "acquisition.warmup_traces") {
      m.acquisition.warmup_traces = static_cast<int>(parse_u64(k, v));
    } else {
      throw FormatError("unknown metadata key: " + k);
    }
  }
  if (digest && *digest != m.leakage.digest()) {
    throw FormatError("metadata params_digest does not match leakage fields");
  }
  return m;
}

Block TraceSet::block(std::size_t i) const {
  if (record_len_ != 16) {
    throw InvalidArgument("trace records are not 16-byte blocks");
  }
  Block b{};
  std::memcpy(b.data(), data_.data() + i * 16, 16);
  return b;
}

void TraceSet::reserve(std::size_t n) {
  data_.reserve(n * record_len_);
  values_.reserve(n);
}

void TraceSet::push_back(std::span<const std::uint8_t> data, double value) {
  if (data.size() != record_len_) {
    throw InvalidArgument("trace record has " + std::to_string(data.size()) +
                          " bytes, expected " + std::to_string(record_len_));
  }
  if (!std::isfinite(value)) {
    throw InvalidArgument("trace values must be finite");
  }
  data_.insert(data_.end(), data.begin(), data.end());
  values_.push_back(value);
}

std::string encode_bttr(const TraceSet& ts) {
  std::string meta = ts.meta.serialize();
  std::string out;
  out.reserve(17 + meta.size() + ts.size() * (ts.record_len() + 8u));
  out.append(kMagic, 4);
  put_u32(out, kVersion);
  put_u32(out, static_cast<std::uint32_t>(ts.size()));
  out.push_back(static_cast<char>(ts.record_len()));
  put_u32(out, static_cast<std::uint32_t>(meta.size()));
  out += meta;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    auto d = ts.data(i);
    out.append(reinterpret_cast<const char*>(d.data()), d.size());
    put_f64(out, ts.value(i));
  }
  return out;
}

TraceSet decode_bttr(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  auto magic = r.take(4, "magic");
  if (std::memcmp(magic.data(), kMagic, 4) != 0) {
    throw FormatError("not a BTTR trace file (bad magic)");
  }
  std::uint32_t version = r.u32("version");
  if (version != kVersion) {
    throw FormatError("unsupported BTTR version " + std::to_string(version));
  }
  std::uint32_t n = r.u32("trace count");
  std::uint8_t len = r.take(1, "record length")[0];
  std::uint32_t meta_len = r.u32("metadata length");
  auto meta = r.take(meta_len, "metadata");
  TraceSet ts(len);
  ts.meta = TraceMeta::parse(
      std::string_view(reinterpret_cast<const char*>(meta.data()), meta.size()));
  ts.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    auto d = r.take(len, "record data");
    double v = r.f64("record value");
    if (!std::isfinite(v)) {
      throw FormatError("non-finite value in record " + std::to_string(i));
    }
    ts.push_back(d, v);
  }
  if (!r.done()) throw FormatError("trailing bytes after the last record");
  return ts;
}

void write_bttr(const TraceSet& ts, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  std::string bytes = encode_bttr(ts);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw IoError("failed writing " + path.string());
}

TraceSet read_bttr(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                  std::istreambuf_iterator<char>());
  return decode_bttr(bytes);
}

void write_trace_csv(const TraceSet& ts, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << "index,ciphertext_hex,value\n";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    f << i << "," << to_hex(ts.data(i)) << "," << fmt_double(ts.value(i))
      << "\n";
  }
  if (!f) throw IoError("failed writing " + path.string());
}

}  // namespace statica
