// Copyright 2026 The qdelete Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qdelete: validate, sweep, tabulate, diagnose and optimize deletion machines.
//
// Exit status: 0 success / valid machine, 1 invalid machine, 2 usage or parse error.

#include "qdelete/commands.hpp"
#include "qdelete/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace qdelete;

namespace {

struct SourceFlags {
  std::string preset;
  std::string machine;
  std::optional<double> m1p;

  void add_to(CLI::App* cmd) {
    auto* p = cmd->add_option("--preset", preset, "Named preset: case1, case2, case3, case4, perfect");
    auto* m = cmd->add_option("--machine", machine, "Machine JSON file");
    p->excludes(m);
    cmd->add_option("--m1p", m1p, "Override the blank state, m1p = <S|0>")->check(CLI::Range(-1.0, 1.0));
  }

  bool given() const { return !preset.empty() || !machine.empty(); }

  PresetRecord<double> load() const {
    PresetRecord<double> rec = !machine.empty() ? record_from_machine(machine, read_machine_file(machine))
                                                : preset_by_name<double>(preset);
    if (!m1p) return rec;
    if (rec.machine) {
      auto p = *rec.machine;
      p.sigma = BlankState<double>(*m1p);
      return record_from_machine(rec.name, p);
    }
    rec.sigma = BlankState<double>(*m1p);
    return rec;
  }
};

Objective parse_objective(const std::string& s) {
  if (s == "max-fidelity") return Objective::max_avg_fidelity;
  if (s == "min-distortion") return Objective::min_avg_distortion;
  return Objective::weighted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator and optimizer for input-dependent quantum deleting machines"};
  app.require_subcommand(1);

  auto* validate_cmd = app.add_subcommand("validate", "Check the unitarity conditions of a machine");
  SourceFlags validate_src;
  std::string validate_file;
  validate_src.add_to(validate_cmd);
  validate_cmd->add_option("file", validate_file, "Machine JSON file");

  auto* sweep_cmd = app.add_subcommand("sweep", "Fidelity and distortion over alpha^2 in [0, 1] as CSV");
  SourceFlags sweep_src;
  int points = 101;
  std::string sweep_out;
  sweep_src.add_to(sweep_cmd);
  sweep_cmd->add_option("--points", points, "Number of evenly spaced alpha^2 values")->check(CLI::Range(2, 1000000));
  sweep_cmd->add_option("--out", sweep_out, "Output CSV path (default: stdout)");

  auto* cases_cmd = app.add_subcommand("cases", "Average distortion and fidelity of every preset");

  auto* diagnose_cmd = app.add_subcommand("diagnose", "Compare printed closed forms against the direct route");
  int samples = 200;
  std::uint64_t diag_seed = 0;
  diagnose_cmd->add_option("--samples", samples, "Number of random valid machines")->check(CLI::PositiveNumber);
  diagnose_cmd->add_option("--seed", diag_seed, "Random seed");

  auto* optimize_cmd = app.add_subcommand("optimize", "Search valid machines with restarted Nelder-Mead");
  OptConfig cfg;
  std::string objective = "max-fidelity";
  SourceFlags warm_src;
  std::string machine_out = "best_machine.json";
  std::string history_out = "optimize_history.csv";
  optimize_cmd->add_option("--objective", objective, "max-fidelity | min-distortion | weighted")
      ->check(CLI::IsMember({"max-fidelity", "min-distortion", "weighted"}));
  optimize_cmd->add_option("--wf", cfg.weight_fidelity, "Weight of the average fidelity (weighted)");
  optimize_cmd->add_option("--wd", cfg.weight_distortion, "Weight of the average distortion (weighted)");
  optimize_cmd->add_option("--seed", cfg.seed, "Random seed; each restart draws from a stream derived from (seed, restart)");
  optimize_cmd->add_option("--restarts", cfg.restarts, "Independent local searches")->check(CLI::PositiveNumber);
  optimize_cmd->add_option("--max-iters", cfg.max_iters, "Nelder-Mead iterations per restart")
      ->check(CLI::NonNegativeNumber);
  optimize_cmd->add_option("--out", machine_out, "Best machine JSON path");
  optimize_cmd->add_option("--history", history_out, "History CSV path");
  warm_src.add_to(optimize_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate_cmd->parsed()) {
      if (!validate_file.empty() && validate_src.given()) throw CLI::ValidationError("give either a file or a source flag");
      if (!validate_file.empty()) validate_src.machine = validate_file;
      if (!validate_src.given()) throw CLI::ValidationError("validate needs a machine file or --preset");
      const auto rec = validate_src.load();
      if (!rec.machine) {
        std::cout << rec.name << " exists only as couplings (formula mode); no machine realizes it\n";
        return kExitInvalidMachine;
      }
      return cmd_validate(*rec.machine, std::cout);
    }
    if (sweep_cmd->parsed()) {
      if (!sweep_src.given()) throw CLI::ValidationError("sweep needs --preset or --machine");
      const auto rec = sweep_src.load();
      if (rec.machine && !rec.feasible_as_unitary) {
        std::cerr << "error: machine violates the unitarity conditions\n";
        return kExitInvalidMachine;
      }
      const auto rows = sweep(rec, points);
      if (sweep_out.empty()) {
        write_sweep_csv(std::cout, rows, !rec.machine);
      } else {
        std::ofstream out(sweep_out, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write '" + sweep_out + "'");
        write_sweep_csv(out, rows, !rec.machine);
      }
      return kExitOk;
    }
    if (cases_cmd->parsed()) {
      render_cases(std::cout, cases_table());
      return kExitOk;
    }
    if (diagnose_cmd->parsed()) {
      render_diagnose(std::cout, diagnose(samples, diag_seed));
      return kExitOk;
    }
    if (optimize_cmd->parsed()) {
      cfg.objective = parse_objective(objective);
      if (warm_src.given()) {
        const auto rec = warm_src.load();
        if (!rec.machine || !rec.feasible_as_unitary) {
          std::cerr << "error: warm start must be a valid machine\n";
          return kExitInvalidMachine;
        }
        cfg.warm_start = *rec.machine;
      }
      check_config(cfg);
      cmd_optimize(cfg, machine_out, history_out, std::cout);
      return kExitOk;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalidMachine;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
