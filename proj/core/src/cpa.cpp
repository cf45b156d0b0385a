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

#include "statica/cpa.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "statica/aes.hpp"
#include "statica/error.hpp"
#include "statica/skinny.hpp"
#include "statica/stats.hpp"

namespace statica {

std::string_view attack_name(AttackKind kind) {
  switch (kind) {
    case AttackKind::kAesFinalRound:
      return "aes_final_round";
    case AttackKind::kSkinnyFirstOrder:
      return "skinny_first_order";
    case AttackKind::kSkinnySecondOrder:
      return "skinny_second_order";
  }
  return "unknown";
}

PredictionMatrix::PredictionMatrix(const PredictionTable& table,
                                   std::span<const std::uint8_t> data)
    : n_(data.size()), cells_(256 * data.size()) {
  for (int k = 0; k < 256; ++k) {
    for (std::size_t t = 0; t < n_; ++t) {
      cells_[static_cast<std::size_t>(k) * n_ + t] = table[data[t]][k];
    }
  }
}

Ranking rank_guesses(const Correlations& corr) {
  Ranking r{};
  std::iota(r.begin(), r.end(), 0);
  std::stable_sort(r.begin(), r.end(), [&](std::uint8_t a, std::uint8_t b) {
    const double ca = corr[a], cb = corr[b];
    if (std::isnan(ca)) return false;
    if (std::isnan(cb)) return true;
    return std::fabs(ca) > std::fabs(cb);
  });
  return r;
}

Ranking CpaResult::ranking(std::size_t checkpoint, std::size_t byte) const {
  return rank_guesses(corr.at(checkpoint).at(byte));
}

int CpaResult::rank_of(std::size_t checkpoint, std::size_t byte,
                       std::uint8_t guess) const {
  auto r = ranking(checkpoint, byte);
  for (int i = 0; i < 256; ++i) {
    if (r[i] == guess) return i + 1;
  }
  return 256;
}

std::vector<std::uint8_t> CpaResult::best_guess() const {
  std::vector<std::uint8_t> out;
  if (corr.empty()) return out;
  for (std::size_t b = 0; b < n_bytes(); ++b) {
    out.push_back(ranking(corr.size() - 1, b)[0]);
  }
  return out;
}

namespace {
bool strict_first(const Correlations& c, std::uint8_t key) {
  const double t = c[key];
  if (std::isnan(t)) return false;
  for (int k = 0; k < 256; ++k) {
    if (k == key || std::isnan(c[k])) continue;
    if (std::fabs(c[k]) >= std::fabs(t)) return false;
  }
  return true;
}
}  // namespace

std::optional<std::size_t> mtd(std::span<const std::size_t> checkpoints,
                               std::span<const Correlations> trajectory,
                               std::uint8_t true_key) {
  if (checkpoints.size() != trajectory.size()) {
    throw InvalidArgument("mtd: checkpoint and trajectory lengths differ");
  }
  std::optional<std::size_t> found;
  for (std::size_t i = checkpoints.size(); i-- > 0;) {
    if (!strict_first(trajectory[i], true_key)) break;
    found = checkpoints[i];
  }
  return found;
}

std::vector<std::size_t> default_checkpoints(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t decade = 100; decade <= n; decade *= 10) {
    for (std::size_t m : {1, 2, 5}) {
      if (decade * m < n) out.push_back(decade * m);
    }
  }
  out.push_back(n);
  return out;
}

std::vector<std::size_t> fine_checkpoints(std::size_t n) {
  static constexpr std::size_t kSteps[] = {10, 12, 15, 20, 25, 30, 40, 50, 60, 80};
  std::vector<std::size_t> out;
  for (std::size_t decade = 10; decade * 10 <= n; decade *= 10) {
    for (std::size_t m : kSteps) {
      if (decade * m < n) out.push_back(decade * m);
    }
  }
  out.push_back(n);
  return out;
}

CpaResult run_cpa(const std::vector<std::vector<std::uint8_t>>& data,
                  const std::vector<PredictionTable>& tables,
                  std::span<const double> y, const AttackOptions& opts) {
  if (data.size() != tables.size() || data.empty()) {
    throw InvalidArgument("run_cpa: data and tables must be non-empty and match");
  }
  const std::size_t n = y.size();
  for (const auto& d : data) {
    if (d.size() != n) throw InvalidArgument("run_cpa: data length mismatch");
  }
  CpaResult r;
  r.checkpoints = opts.checkpoints.empty() ? default_checkpoints(n)
                                           : opts.checkpoints;
  if (r.checkpoints.empty() || r.checkpoints.front() < 2) {
    throw InvalidArgument("checkpoints must start at 2 traces or more");
  }
  for (std::size_t i = 1; i < r.checkpoints.size(); ++i) {
    if (r.checkpoints[i] <= r.checkpoints[i - 1]) {
      throw InvalidArgument("checkpoints must be strictly increasing");
    }
  }
  if (r.checkpoints.back() > n) {
    throw InvalidArgument("too few traces (" + std::to_string(n) +
                          ") for checkpoint " +
                          std::to_string(r.checkpoints.back()));
  }
  const std::size_t nb = data.size();
  // Centering first keeps the sums small.
  const double ybar = std::accumulate(y.begin(), y.end(), 0.0) /
                      static_cast<double>(std::max<std::size_t>(n, 1));

  // Guess-major copies of the tables for the inner loops.
  std::vector<std::vector<double>> h(nb, std::vector<double>(256 * 256));
  for (std::size_t b = 0; b < nb; ++b) {
    for (int k = 0; k < 256; ++k) {
      for (int d = 0; d < 256; ++d) h[b][k * 256 + d] = tables[b][d][k];
    }
  }
  std::vector<std::array<double, 256>> cnt(nb), sy(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    cnt[b].fill(0.0);
    sy[b].fill(0.0);
  }
  double s_y = 0.0, s_yy = 0.0;
  std::size_t t = 0;
  for (std::size_t cp : r.checkpoints) {
    for (; t < cp; ++t) {
      const double v = y[t] - ybar;
      s_y += v;
      s_yy += v * v;
      for (std::size_t b = 0; b < nb; ++b) {
        const std::uint8_t d = data[b][t];
        cnt[b][d] += 1.0;
        sy[b][d] += v;
      }
    }
    const double N = static_cast<double>(cp);
    const double var_y = s_yy - s_y * s_y / N;
    std::vector<Correlations> row(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      for (int k = 0; k < 256; ++k) {
        const double* hk = &h[b][k * 256];
        double s_h = 0.0, s_hh = 0.0, s_hy = 0.0;
        for (int d = 0; d < 256; ++d) {
          s_h += cnt[b][d] * hk[d];
          s_hh += cnt[b][d] * hk[d] * hk[d];
          s_hy += sy[b][d] * hk[d];
        }
        const double var_h = s_hh - s_h * s_h / N;
        const double cov = s_hy - s_h * s_y / N;
        double c = std::numeric_limits<double>::quiet_NaN();
        if (var_h > 1e-9 * N && var_y > 0.0) {
          c = std::clamp(cov / std::sqrt(var_h * var_y), -1.0, 1.0);
        }
        row[b][k] = c;
      }
    }
    r.corr.push_back(std::move(row));
  }

  r.true_key = opts.true_key;
  if (!opts.true_key.empty()) {
    if (opts.true_key.size() != nb) {
      throw InvalidArgument("true key length does not match attacked bytes");
    }
    std::vector<Correlations> traj(r.checkpoints.size());
    r.mtd = 0;
    for (std::size_t b = 0; b < nb; ++b) {
      for (std::size_t c = 0; c < r.checkpoints.size(); ++c) {
        traj[c] = r.corr[c][b];
      }
      auto m = mtd(r.checkpoints, traj, opts.true_key[b]);
      r.byte_mtd.push_back(m);
      if (!m) {
        r.mtd.reset();
      } else if (r.mtd) {
        r.mtd = std::max(*r.mtd, *m);
      }
    }
    // A key with no bytes cannot be disclosed.
    if (nb == 0) r.mtd.reset();
  }
  return r;
}

std::vector<std::vector<std::uint8_t>> attack_data(const TraceSet& ts,
                                                   AttackKind kind) {
  const bool aes = kind == AttackKind::kAesFinalRound;
  if (aes != (ts.meta.cipher == CipherId::kAes128)) {
    throw InvalidArgument(std::string("attack ") +
                          std::string(attack_name(kind)) +
                          " does not match cipher " +
                          std::string(cipher_name(ts.meta.cipher)));
  }
  if (ts.record_len() != 16) {
    throw InvalidArgument("trace records must hold 16 bytes");
  }
  const std::size_t n = ts.size();
  if (aes) {
    if (ts.meta.data_field != "ciphertext") {
      throw InvalidArgument("AES attack needs ciphertext records");
    }
    std::vector<std::vector<std::uint8_t>> d(16, std::vector<std::uint8_t>(n));
    for (std::size_t t = 0; t < n; ++t) {
      auto rec = ts.data(t);
      for (int j = 0; j < 16; ++j) d[j][t] = rec[j];
    }
    return d;
  }
  if (ts.meta.data_field != "plaintext") {
    throw InvalidArgument("SKINNY attack needs plaintext records");
  }
  std::vector<std::vector<std::uint8_t>> d(8, std::vector<std::uint8_t>(n));
  for (std::size_t t = 0; t < n; ++t) {
    const Block pt = ts.block(t);
    for (int b = 0; b < 8; ++b) d[b][t] = skinny_round2_data(pt, b);
  }
  return d;
}

std::vector<PredictionTable> attack_tables(AttackKind kind) {
  if (kind == AttackKind::kAesFinalRound) {
    PredictionTable t{};
    for (int d = 0; d < 256; ++d) {
      for (int k = 0; k < 256; ++k) {
        t[d][k] = static_cast<std::uint8_t>(hamming_weight(inv_subbytes_byte(
            static_cast<std::uint8_t>(d), static_cast<std::uint8_t>(k))));
      }
    }
    // Byte j of the result is ciphertext byte j, fed by state byte i with
    // shift_row_index(i) == j; the model itself is the same for every j.
    return std::vector<PredictionTable>(16, t);
  }
  std::vector<PredictionTable> out(8);
  for (int b = 0; b < 8; ++b) {
    const std::uint8_t rc = skinny_round2_constant(b);
    for (int d = 0; d < 256; ++d) {
      for (int k = 0; k < 256; ++k) {
        out[b][d][k] = static_cast<std::uint8_t>(
            hamming_weight(skinny_sbox(static_cast<std::uint8_t>(d ^ k)) ^ rc));
      }
    }
  }
  return out;
}

std::vector<double> attack_preprocess(const TraceSet& ts, AttackKind kind,
                                      int half_window) {
  auto y = highpass(ts.values(), half_window);
  if (kind == AttackKind::kSkinnySecondOrder) y = center_square(y);
  return y;
}

CpaResult run_attack(const TraceSet& ts, AttackKind kind,
                     const AttackOptions& opts) {
  auto data = attack_data(ts, kind);
  auto y = attack_preprocess(ts, kind, opts.half_window);
  auto r = run_cpa(data, attack_tables(kind), y, opts);
  r.attack = kind;
  return r;
}

CpaResult attack_aes_final_round(const TraceSet& ts, const AttackOptions& opts) {
  return run_attack(ts, AttackKind::kAesFinalRound, opts);
}

CpaResult attack_skinny_first_order(const TraceSet& ts,
                                    const AttackOptions& opts) {
  return run_attack(ts, AttackKind::kSkinnyFirstOrder, opts);
}

CpaResult attack_skinny_second_order(const TraceSet& ts,
                                     const AttackOptions& opts) {
  return run_attack(ts, AttackKind::kSkinnySecondOrder, opts);
}

SubsetMtd subset_mtd(const TraceSet& ts, AttackKind kind,
                     const AttackOptions& opts, std::size_t subsets) {
  if (subsets == 0 || ts.size() / subsets < 2) {
    throw InvalidArgument("not enough traces for the requested subsets");
  }
  SubsetMtd out;
  out.subsets = subsets;
  const std::size_t part = ts.size() / subsets;
  double total = 0.0;
  for (std::size_t s = 0; s < subsets; ++s) {
    TraceSet sub(ts.record_len());
    sub.meta = ts.meta;
    sub.reserve(part);
    for (std::size_t t = s * part; t < (s + 1) * part; ++t) {
      sub.push_back(ts.data(t), ts.value(t));
    }
    AttackOptions o = opts;
    o.checkpoints.clear();
    for (auto c : opts.checkpoints) {
      if (c <= part) o.checkpoints.push_back(c);
    }
    auto r = run_attack(sub, kind, o);
    if (r.mtd) {
      ++out.disclosed;
      total += static_cast<double>(*r.mtd);
    }
  }
  if (out.disclosed > 0) total /= static_cast<double>(out.disclosed);
  if (out.disclosed > 0) out.mean_mtd = total;
  return out;
}

namespace {
std::string fmt_corr(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string fmt_mtd(const std::optional<std::size_t>& m) {
  return m ? std::to_string(*m) : "none";
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

AttackKind parse_attack_name(const std::string& s) {
  for (auto k : {AttackKind::kAesFinalRound, AttackKind::kSkinnyFirstOrder,
                 AttackKind::kSkinnySecondOrder}) {
    if (attack_name(k) == s) return k;
  }
  throw FormatError("unknown attack in CPA file: " + s);
}
}  // namespace

void write_cpa_csv(const CpaResult& r, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << "# attack=" << attack_name(r.attack) << " bytes=" << r.n_bytes()
    << " true_key=" << (r.true_key.empty() ? "none" : to_hex(r.true_key))
    << "\n";
  f << "checkpoint,byte";
  char name[8];
  for (int k = 0; k < 256; ++k) {
    std::snprintf(name, sizeof(name), ",c%03d", k);
    f << name;
  }
  f << "\n";
  for (std::size_t c = 0; c < r.checkpoints.size(); ++c) {
    for (std::size_t b = 0; b < r.n_bytes(); ++b) {
      f << r.checkpoints[c] << "," << b;
      for (int k = 0; k < 256; ++k) f << "," << fmt_corr(r.corr[c][b][k]);
      f << "\n";
    }
  }
  f << "mtd";
  for (const auto& m : r.byte_mtd) f << "," << fmt_mtd(m);
  f << "," << (r.true_key.empty() ? "none" : fmt_mtd(r.mtd)) << "\n";
  if (!f) throw IoError("failed writing " + path.string());
}

CpaResult read_cpa_csv(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path.string());
  CpaResult r;
  std::string line;
  if (!std::getline(f, line) || line.rfind("# attack=", 0) != 0) {
    throw FormatError(path.string() + ": missing CPA header line");
  }
  std::size_t n_bytes = 0;
  for (const auto& field : split(line.substr(2), ' ')) {
    auto eq = field.find('=');
    if (eq == std::string::npos) continue;
    auto k = field.substr(0, eq), v = field.substr(eq + 1);
    if (k == "attack") {
      r.attack = parse_attack_name(v);
    } else if (k == "bytes") {
      n_bytes = std::stoul(v);
    } else if (k == "true_key" && v != "none") {
      r.true_key = from_hex(v);
    }
  }
  if (n_bytes == 0 || n_bytes > 16) {
    throw FormatError(path.string() + ": bad byte count");
  }
  if (!std::getline(f, line) || line.rfind("checkpoint,byte,", 0) != 0) {
    throw FormatError(path.string() + ": missing CSV column header");
  }
  int lineno = 2;
  bool summary = false;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto cells = split(line, ',');
    const std::string where = path.string() + ":" + std::to_string(lineno);
    if (cells[0] == "mtd") {
      if (cells.size() != n_bytes + 2) throw FormatError(where + ": bad mtd row");
      for (std::size_t b = 0; b < n_bytes; ++b) {
        r.byte_mtd.push_back(cells[b + 1] == "none"
                                 ? std::nullopt
                                 : std::optional<std::size_t>(
                                       std::stoull(cells[b + 1])));
      }
      if (cells.back() != "none") r.mtd = std::stoull(cells.back());
      summary = true;
      continue;
    }
    if (cells.size() != 258) throw FormatError(where + ": expected 258 columns");
    std::size_t cp = 0, b = 0;
    Correlations c{};
    try {
      cp = std::stoull(cells[0]);
      b = std::stoull(cells[1]);
      for (int k = 0; k < 256; ++k) {
        c[k] = cells[k + 2] == "nan" ? std::numeric_limits<double>::quiet_NaN()
                                     : std::stod(cells[k + 2]);
      }
    } catch (const std::exception&) {
      throw FormatError(where + ": bad number");
    }
    if (b == 0) {
      r.checkpoints.push_back(cp);
      r.corr.emplace_back();
    }
    if (r.corr.empty() || r.checkpoints.back() != cp ||
        r.corr.back().size() != b) {
      throw FormatError(where + ": rows out of order");
    }
    r.corr.back().push_back(c);
  }
  if (r.corr.empty()) throw FormatError(path.string() + ": no correlation rows");
  for (const auto& row : r.corr) {
    if (row.size() != n_bytes) throw FormatError(path.string() + ": short block");
  }
  if (!summary) throw FormatError(path.string() + ": missing mtd summary row");
  return r;
}

}  // namespace statica
