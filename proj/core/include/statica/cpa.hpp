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
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "statica/trace_file.hpp"

namespace statica {

using Correlations = std::array<double, 256>;
using Ranking = std::array<std::uint8_t, 256>;
// Hypothesis table: prediction[d][k] for data byte d under key guess k.
using PredictionTable = std::array<std::array<std::uint8_t, 256>, 256>;

enum class AttackKind { kAesFinalRound, kSkinnyFirstOrder, kSkinnySecondOrder };

std::string_view attack_name(AttackKind kind);

// 256 key guesses x n traces of Hamming-weight predictions.
class PredictionMatrix {
 public:
  PredictionMatrix(const PredictionTable& table,
                   std::span<const std::uint8_t> data);
  std::size_t n_traces() const { return n_; }
  std::uint8_t at(int guess, std::size_t trace) const {
    return cells_[static_cast<std::size_t>(guess) * n_ + trace];
  }
  std::span<const std::uint8_t> row(int guess) const {
    return {cells_.data() + static_cast<std::size_t>(guess) * n_, n_};
  }

 private:
  std::size_t n_;
  std::vector<std::uint8_t> cells_;
};

struct CpaResult {
  AttackKind attack = AttackKind::kAesFinalRound;
  std::vector<std::size_t> checkpoints;
  // corr[checkpoint][byte][guess]
  std::vector<std::vector<Correlations>> corr;
  // Attacked key bytes, empty when unknown.
  std::vector<std::uint8_t> true_key;
  std::vector<std::optional<std::size_t>> byte_mtd;
  // Largest per-byte MTD; none if any byte is never disclosed.
  std::optional<std::size_t> mtd;

  std::size_t n_bytes() const { return corr.empty() ? 0 : corr[0].size(); }
  Ranking ranking(std::size_t checkpoint, std::size_t byte) const;
  // 1-based rank of `guess`; NaN correlations rank last.
  int rank_of(std::size_t checkpoint, std::size_t byte,
              std::uint8_t guess) const;
  // Rank-1 guesses at the final checkpoint.
  std::vector<std::uint8_t> best_guess() const;
};

// Guesses ordered by |corr| descending, ties toward the smaller guess and
// NaN last.
Ranking rank_guesses(const Correlations& corr);

// Smallest checkpoint from which `true_key` holds strict rank 1 at every
// later checkpoint.
std::optional<std::size_t> mtd(std::span<const std::size_t> checkpoints,
                               std::span<const Correlations> trajectory,
                               std::uint8_t true_key);

// {100, 200, 500, 1000, ...} up to n, always ending with n.
std::vector<std::size_t> default_checkpoints(std::size_t n);
// Finer grid {100, 120, 150, 200, 250, 300, 400, 500, 600, 800, 1000, ...}
// up to n, always ending with n.
std::vector<std::size_t> fine_checkpoints(std::size_t n);

struct AttackOptions {
  std::vector<std::size_t> checkpoints;  // empty selects the defaults
  int half_window = 50;
  // Attacked key bytes for MTD; empty disables MTD.
  std::vector<std::uint8_t> true_key;
};

// Generic engine: data[b][t] is the data byte of trace t for attacked
// byte b, tables[b] its prediction table, y the preprocessed values.
CpaResult run_cpa(const std::vector<std::vector<std::uint8_t>>& data,
                  const std::vector<PredictionTable>& tables,
                  std::span<const double> y, const AttackOptions& opts);

// HW(InvSBox(c_j ^ k)) against high-pass filtered values. Result byte j
// is the round-10 key byte at ciphertext position j.
CpaResult attack_aes_final_round(const TraceSet& ts,
                                 const AttackOptions& opts = {});
// HW of the round-2 SKINNY prediction against high-pass filtered values.
CpaResult attack_skinny_first_order(const TraceSet& ts,
                                    const AttackOptions& opts = {});
// Same model against high-pass filtered, centered and squared values.
CpaResult attack_skinny_second_order(const TraceSet& ts,
                                     const AttackOptions& opts = {});
// Throws InvalidArgument when the attack does not fit the trace set.
CpaResult run_attack(const TraceSet& ts, AttackKind kind,
                     const AttackOptions& opts = {});

// Per-trace data bytes and tables used by each attack, exposed for the
// explicit-matrix cross-check.
std::vector<std::vector<std::uint8_t>> attack_data(const TraceSet& ts,
                                                   AttackKind kind);
std::vector<PredictionTable> attack_tables(AttackKind kind);
std::vector<double> attack_preprocess(const TraceSet& ts, AttackKind kind,
                                      int half_window);

struct SubsetMtd {
  std::size_t subsets = 0;
  std::size_t disclosed = 0;
  // Mean whole-key MTD over the subsets that disclosed the key.
  std::optional<double> mean_mtd;
};

// Splits the trace set into `subsets` disjoint consecutive parts and
// attacks each one.
SubsetMtd subset_mtd(const TraceSet& ts, AttackKind kind,
                     const AttackOptions& opts, std::size_t subsets = 10);

void write_cpa_csv(const CpaResult& r, const std::filesystem::path& path);
// Throws FormatError for malformed files.
CpaResult read_cpa_csv(const std::filesystem::path& path);

}  // namespace statica
