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

// statica: static power side-channel experiment runner.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "statica/error.hpp"
#include "statica/experiment.hpp"

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> traces;
  std::vector<std::string> inputs;
};

statica::ExperimentConfig load_experiment(const Options& o) {
  auto cfg = statica::ExperimentConfig::load(o.config);
  if (o.seed) cfg.seed = *o.seed;
  if (o.traces) {
    if (*o.traces == 0) throw statica::InvalidArgument("--traces must be >= 1");
    cfg.traces = *o.traces;
  }
  return cfg;
}

// Relative report inputs name results inside the output directory.
fs::path in_out_dir(const Options& o, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : fs::path(o.out) / path;
}

void add_common(CLI::App* cmd, Options& o, bool inputs) {
  cmd->add_option("--config", o.config, "configuration file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--seed", o.seed, "override the configured seed");
  cmd->add_option("--traces", o.traces, "override the configured trace count");
  if (inputs) {
    cmd->add_option("--input", o.inputs, "input file(s), overriding the config");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Static power side-channel simulation and attack toolkit"};
  app.require_subcommand(1);
  Options o;
  auto* simulate = app.add_subcommand("simulate", "acquire a trace campaign");
  auto* attack = app.add_subcommand("attack", "run CPA on a trace file");
  auto* sweep = app.add_subcommand("sweep-offset", "MTD versus acquisition offset");
  auto* monitor = app.add_subcommand("monitor-test", "run a clock monitor scenario");
  auto* report = app.add_subcommand("report", "build plot data from results");
  add_common(simulate, o, false);
  add_common(attack, o, true);
  add_common(sweep, o, false);
  add_common(monitor, o, false);
  add_common(report, o, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    std::cerr << "statica: error: usage: " << e.what() << "\n";
    return 2;
  }

  try {
    const fs::path out(o.out);
    if (simulate->parsed()) {
      statica::cmd_simulate(load_experiment(o), out, std::cout);
    } else if (attack->parsed()) {
      std::optional<fs::path> in;
      if (o.inputs.size() > 1) {
        throw statica::InvalidArgument("attack takes a single --input");
      }
      if (!o.inputs.empty()) in = fs::path(o.inputs[0]);
      statica::cmd_attack(load_experiment(o), out, std::cout, in);
    } else if (sweep->parsed()) {
      statica::cmd_sweep_offset(load_experiment(o), out, std::cout);
    } else if (monitor->parsed()) {
      if (o.seed || o.traces) {
        throw statica::InvalidArgument(
            "monitor-test takes its seed from the scenario file");
      }
      statica::cmd_monitor_test(statica::Scenario::load(o.config), out,
                                std::cout);
    } else if (report->parsed()) {
      std::vector<fs::path> inputs(o.inputs.begin(), o.inputs.end());
      fs::path dir = out;
      if (inputs.empty()) {
        auto cfg = load_experiment(o);
        for (const auto& p : cfg.report_inputs) inputs.push_back(in_out_dir(o, p));
        dir = out / cfg.report_dir;
      }
      statica::cmd_report(inputs, dir, std::cout);
    }
  } catch (const statica::Error& e) {
    std::cerr << "statica: error: " << e.code() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "statica: error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
