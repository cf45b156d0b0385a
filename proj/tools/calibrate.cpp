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

// Calibration of the default leakage parameters.
//
// For each candidate noise level (and memory-effect magnitude) runs a few
// independently seeded campaigns and reports the whole-key MTD on the fine
// checkpoint grid. The defaults in leakage.cpp were picked from this table:
// AES sigma_noise so that the median MTD sits well inside [500, 5000], and
// mem_gamma so that a 5 us offset gives no disclosure at 1e5 traces while
// offsets from 125 us up stay on the plateau.

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "statica/aes.hpp"
#include "statica/campaign.hpp"
#include "statica/cpa.hpp"
#include "statica/skinny.hpp"

using namespace statica;

int main(int argc, char** argv) {
  CLI::App app{"Leakage parameter calibration"};
  std::string target = "aes";
  std::vector<double> sigmas;
  std::vector<double> gammas;
  std::vector<double> offsets;
  std::size_t traces = 10000;
  std::size_t seeds = 5;
  app.add_option("--target", target, "aes or skinny_masked")
      ->check(CLI::IsMember({"aes", "skinny_masked"}));
  app.add_option("--sigma", sigmas, "sigma_noise candidates");
  app.add_option("--gamma", gammas, "mem_gamma candidates");
  app.add_option("--offset", offsets, "acquisition offsets in us");
  app.add_option("--traces", traces, "traces per campaign");
  app.add_option("--seeds", seeds, "campaigns per setting");
  CLI11_PARSE(app, argc, argv);

  const bool aes = target == "aes";
  const CipherId cipher = aes ? CipherId::kAes128 : CipherId::kSkinny128;
  const LeakageParams base = default_leakage(cipher, !aes);
  if (sigmas.empty()) sigmas.push_back(base.sigma_noise);
  if (gammas.empty()) gammas.push_back(base.mem_gamma);
  if (offsets.empty()) offsets.push_back(AcquisitionSpec{}.offset);

  const Block key = block_from_hex("2b7e151628aed2a6abf7158809cf4f3c");
  std::vector<std::uint8_t> true_key;
  if (aes) {
    const Block rk = aes_expand_key(key)[10];
    true_key.assign(rk.begin(), rk.end());
  } else {
    const auto sk = skinny_round2_subkey(key);
    true_key.assign(sk.begin(), sk.end());
  }

  std::printf("sigma,gamma,offset_us,disclosed,median_mtd,min_mtd,max_mtd\n");
  for (double sigma : sigmas) {
    for (double gamma : gammas) {
      for (double offset : offsets) {
        std::vector<std::size_t> mtds;
        for (std::size_t s = 0; s < seeds; ++s) {
          CampaignSpec spec;
          spec.cipher = cipher;
          spec.masked = !aes;
          spec.key = key;
          spec.n_traces = traces;
          spec.leakage = base;
          spec.leakage.sigma_noise = sigma;
          spec.leakage.mem_gamma = gamma;
          spec.acquisition.offset = offset;
          spec.seed = 1 + s;
          const TraceSet ts = acquire_campaign(spec);
          AttackOptions opts;
          opts.checkpoints = fine_checkpoints(traces);
          opts.true_key = true_key;
          const auto r = run_attack(ts,
                                    aes ? AttackKind::kAesFinalRound
                                        : AttackKind::kSkinnySecondOrder,
                                    opts);
          if (r.mtd) mtds.push_back(*r.mtd);
        }
        std::sort(mtds.begin(), mtds.end());
        if (mtds.empty()) {
          std::printf("%g,%g,%g,0/%zu,none,none,none\n", sigma, gamma, offset,
                      seeds);
        } else {
          std::printf("%g,%g,%g,%zu/%zu,%zu,%zu,%zu\n", sigma, gamma, offset,
                      mtds.size(), seeds, mtds[mtds.size() / 2], mtds.front(),
                      mtds.back());
        }
      }
    }
  }
  return 0;
}
