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

#include "statica/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "statica/error.hpp"

namespace statica {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

bool valid_name(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '-' || c == '.';
  });
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

double to_double(const std::string& s, int line, const std::string& key) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError(line, key + ": expected a number, got '" + s + "'");
  }
  return v;
}

std::uint64_t to_u64(const std::string& s, int line, const std::string& key) {
  std::string_view v = s;
  int base = 10;
  if (v.size() > 2 && v[0] == '0' && (v[1] == 'x' || v[1] == 'X')) {
    v.remove_prefix(2);
    base = 16;
  }
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out, base);
  if (v.empty() || ec != std::errc() || p != v.data() + v.size()) {
    throw ConfigError(line,
                      key + ": expected an unsigned integer, got '" + s + "'");
  }
  return out;
}

}  // namespace

ConfigFile ConfigFile::parse(std::string_view text) {
  ConfigFile cfg;
  std::string current;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    auto hash = raw.find_first_of("#;");
    std::string line = trim(raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(lineno, "unterminated section header");
      }
      current = trim(std::string_view(line).substr(1, line.size() - 2));
      if (!valid_name(current)) {
        throw ConfigError(lineno, "bad section name '" + current + "'");
      }
      if (cfg.sections_.count(current)) {
        throw ConfigError(lineno, "duplicate section [" + current + "]");
      }
      cfg.sections_[current].line = lineno;
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(lineno, "expected 'key = value'");
    }
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (!valid_name(key)) throw ConfigError(lineno, "bad key '" + key + "'");
    if (current.empty()) {
      throw ConfigError(lineno, "key '" + key + "' outside of any section");
    }
    auto& sec = cfg.sections_[current];
    if (sec.entries.count(key)) {
      throw ConfigError(lineno, "duplicate key '" + key + "'");
    }
    sec.entries[key] = Entry{value, lineno};
    if (pos > text.size()) break;
  }
  return cfg;
}

ConfigFile ConfigFile::load(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

bool ConfigFile::has_section(const std::string& section) const {
  auto it = sections_.find(section);
  if (it == sections_.end()) return false;
  it->second.used = true;
  return true;
}

int ConfigFile::section_line(const std::string& section) const {
  auto it = sections_.find(section);
  return it == sections_.end() ? 0 : it->second.line;
}

const ConfigFile::Entry* ConfigFile::find(const std::string& section,
                                          const std::string& key) const {
  auto it = sections_.find(section);
  if (it == sections_.end()) return nullptr;
  it->second.used = true;
  auto e = it->second.entries.find(key);
  if (e == it->second.entries.end()) return nullptr;
  e->second.used = true;
  return &e->second;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

int ConfigFile::line_of(const std::string& section,
                        const std::string& key) const {
  const Entry* e = find(section, key);
  return e ? e->line : 0;
}

std::optional<std::string> ConfigFile::get(const std::string& section,
                                           const std::string& key) const {
  const Entry* e = find(section, key);
  if (!e) return std::nullopt;
  return e->value;
}

std::string ConfigFile::require(const std::string& section,
                                const std::string& key) const {
  const Entry* e = find(section, key);
  if (!e) {
    throw ConfigError(section_line(section),
                      "missing required key '" + section + "." + key + "'");
  }
  return e->value;
}

double ConfigFile::get_double(const std::string& section,
                              const std::string& key, double fallback) const {
  const Entry* e = find(section, key);
  return e ? to_double(e->value, e->line, key) : fallback;
}

std::int64_t ConfigFile::get_int(const std::string& section,
                                 const std::string& key,
                                 std::int64_t fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  std::int64_t v = 0;
  const auto& s = e->value;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size()) {
    throw ConfigError(e->line, key + ": expected an integer, got '" + s + "'");
  }
  return v;
}

std::uint64_t ConfigFile::get_u64(const std::string& section,
                                  const std::string& key,
                                  std::uint64_t fallback) const {
  const Entry* e = find(section, key);
  return e ? to_u64(e->value, e->line, key) : fallback;
}

bool ConfigFile::get_bool(const std::string& section, const std::string& key,
                          bool fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  if (e->value == "true" || e->value == "yes" || e->value == "1") return true;
  if (e->value == "false" || e->value == "no" || e->value == "0") return false;
  throw ConfigError(e->line,
                    key + ": expected true or false, got '" + e->value + "'");
}

Block ConfigFile::get_block(const std::string& section,
                            const std::string& key) const {
  const Entry* e = find(section, key);
  if (!e) {
    throw ConfigError(section_line(section),
                      "missing required key '" + section + "." + key + "'");
  }
  try {
    return block_from_hex(e->value);
  } catch (const Error& err) {
    throw ConfigError(e->line, key + ": " + err.what());
  }
}

std::vector<double> ConfigFile::get_doubles(const std::string& section,
                                            const std::string& key) const {
  std::vector<double> out;
  const Entry* e = find(section, key);
  if (!e) return out;
  for (const auto& item : split_list(e->value)) {
    out.push_back(to_double(item, e->line, key));
  }
  return out;
}

std::vector<std::uint64_t> ConfigFile::get_u64s(const std::string& section,
                                                const std::string& key) const {
  std::vector<std::uint64_t> out;
  const Entry* e = find(section, key);
  if (!e) return out;
  for (const auto& item : split_list(e->value)) {
    out.push_back(to_u64(item, e->line, key));
  }
  return out;
}

void ConfigFile::reject_unused() const {
  // Report in file order.
  int best_line = 0;
  std::string what;
  for (const auto& [name, sec] : sections_) {
    if (!sec.used && (best_line == 0 || sec.line < best_line)) {
      best_line = sec.line;
      what = "unknown section [" + name + "]";
    }
    if (!sec.used) continue;
    for (const auto& [key, e] : sec.entries) {
      if (!e.used && (best_line == 0 || e.line < best_line)) {
        best_line = e.line;
        what = "unknown key '" + key + "' in [" + name + "]";
      }
    }
  }
  if (best_line != 0) throw ConfigError(best_line, what);
}

}  // namespace statica
