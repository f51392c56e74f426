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
#pragma once

// Implementations behind the qdelete command-line tool. Each command writes
// human-readable output to a stream and returns a structured result so the
// same code path can be checked in-process.

#include "qdelete/optimizer.hpp"
#include "qdelete/presets.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qdelete {

/// Exit statuses of the command-line tool.
enum ExitStatus : int { kExitOk = 0, kExitInvalidMachine = 1, kExitUsage = 2 };

/// Prints defects and Gram deviation; returns kExitOk iff valid.
int cmd_validate(const MachineParams<double>& p, std::ostream& out, double tol = kDefaultValidationTol);

struct SweepRow {
  double alpha_sq = 0.0;
  double fidelity = 0.0;
  double distortion = 0.0;
};

/// Evenly spaced alpha^2 in [0, 1]. Machines use the direct partial-trace
/// route; formula-mode presets use 1 - K1 x(1-x) with K1 as printed.
/// Throws std::invalid_argument for points < 2, std::domain_error for an
/// invalid machine.
std::vector<SweepRow> sweep(const PresetRecord<double>& source, int points);

/// Header "alpha_sq,fidelity,distortion", preceded by "# formula mode" when applicable.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool formula_mode);

struct CasesRow {
  std::string name;
  bool feasible = false;
  double distortion_paper = 0.0;
  double distortion_analytic = 0.0;
  double distortion_quadrature = 0.0;
  double fidelity_paper = 0.0;
  double fidelity_consistent = 0.0;
  double fidelity_quadrature = 0.0;
  double expected_distortion = 0.0;
  double expected_fidelity = 0.0;
};

/// One row per named preset. Quadrature columns integrate the direct
/// partial-trace route for machines and the closed forms in formula mode.
std::vector<CasesRow> cases_table();
void render_cases(std::ostream& out, const std::vector<CasesRow>& rows);

struct DiagnoseReport {
  int samples = 0;
  /// max |avg_distortion(mode) - quadrature of the direct route| over samples.
  double max_dev_distortion_paper = 0.0;
  double max_dev_distortion_analytic = 0.0;
  /// max | observed printed-constant deviation - |0.589 - 3pi/64| |M3 + M4| |.
  double max_dev_paper_prediction_mismatch = 0.0;
  double max_abs_cross_term = 0.0;
  /// max |k1(printed) - k1(consistent)|.
  double max_k1_gap = 0.0;
  /// max |F_direct - (1 - K1 x(1-x))| over 21 points per sample, per convention.
  double max_fidelity_dev_consistent = 0.0;
  double max_fidelity_dev_paper = 0.0;

  struct PresetLine {
    std::string name;
    double m1p = 0.0;
    double k1_paper = 0.0;
    double k1_consistent = 0.0;
    double distortion_dev_paper = 0.0;
    double distortion_dev_analytic = 0.0;
    double fidelity_dev_consistent = 0.0;
    double fidelity_dev_paper = 0.0;
  };
  std::vector<PresetLine> presets;
};

/// Random valid machines are decode(random_search_point(seed + i)).
DiagnoseReport diagnose(int samples, std::uint64_t seed);
void render_diagnose(std::ostream& out, const DiagnoseReport& report);

/// Runs the optimizer, writes the best machine JSON and the history CSV
/// (restart,iteration,objective), and prints a summary.
OptResult cmd_optimize(const OptConfig& cfg, const std::filesystem::path& machine_out,
                       const std::filesystem::path& history_out, std::ostream& out);

void write_history_csv(std::ostream& out, const std::vector<HistoryEntry>& history);

/// Wraps a machine read from a file so it can be swept like a preset.
PresetRecord<double> record_from_machine(std::string name, const MachineParams<double>& p);

}  // namespace qdelete
