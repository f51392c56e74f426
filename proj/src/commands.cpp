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

#include "qdelete/commands.hpp"

#include "qdelete/io.hpp"
#include "qdelete/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace qdelete {

namespace {

constexpr int kDiagnosePoints = 21;

double grid_point(int i, int points) {
  if (i == points - 1) return 1.0;
  return static_cast<double>(i) / static_cast<double>(points - 1);
}

/// max over the 21-point grid of |F_direct - (1 - K1 x (1-x))|.
double fidelity_deviation(const MachineParams<double>& p, double k1_value) {
  double dev = 0.0;
  for (int i = 0; i < kDiagnosePoints; ++i) {
    const double x = grid_point(i, kDiagnosePoints);
    dev = std::max(dev, std::abs(fidelity_direct(p, std::sqrt(x)) - fidelity_closed(k1_value, x)));
  }
  return dev;
}

DiagnoseReport::PresetLine preset_line(const std::string& name, const MachineParams<double>& p) {
  DiagnoseReport::PresetLine line;
  line.name = name;
  line.m1p = p.sigma.m1p();
  const auto c = couplings(p);
  const auto dc = d1_coefficients(c);
  const double quad = avg_distortion_direct_quadrature(p);
  line.k1_paper = k1(c, p.sigma, K1Convention::paper);
  line.k1_consistent = k1(c, p.sigma, K1Convention::consistent);
  line.distortion_dev_paper = std::abs(avg_distortion(dc, DistortionConstant::paper) - quad);
  line.distortion_dev_analytic = std::abs(avg_distortion(dc, DistortionConstant::analytic) - quad);
  line.fidelity_dev_consistent = fidelity_deviation(p, line.k1_consistent);
  line.fidelity_dev_paper = fidelity_deviation(p, line.k1_paper);
  return line;
}

}  // namespace

int cmd_validate(const MachineParams<double>& p, std::ostream& out, double tol) {
  const auto r = validate(p, tol);
  out << "row0 norm defect      " << format_table(r.row0_norm_defect) << '\n'
      << "row1 norm defect      " << format_table(r.row1_norm_defect) << '\n'
      << "orthogonality defect  " << format_table(r.orthogonality_defect) << '\n'
      << "gram deviation        " << format_table(r.gram_defect) << '\n'
      << "tolerance             " << format_table(tol) << '\n'
      << (r.is_valid ? "valid" : "invalid") << '\n';
  return r.is_valid ? kExitOk : kExitInvalidMachine;
}

PresetRecord<double> record_from_machine(std::string name, const MachineParams<double>& p) {
  PresetRecord<double> r;
  r.name = std::move(name);
  r.machine = p;
  r.couplings = couplings(p);
  r.sigma = p.sigma;
  r.feasible_as_unitary = validate(p).is_valid;
  r.expected_avg_distortion = avg_distortion(d1_coefficients(r.couplings), DistortionConstant::analytic);
  r.expected_avg_fidelity = avg_fidelity(k1(r.couplings, r.sigma, K1Convention::consistent)).value;
  return r;
}

std::vector<SweepRow> sweep(const PresetRecord<double>& source, int points) {
  if (points < 2) throw std::invalid_argument("sweep: at least 2 points are required");
  std::vector<SweepRow> rows;
  rows.reserve(points);
  if (source.machine) {
    require_valid(*source.machine);
    for (int i = 0; i < points; ++i) {
      const double x = grid_point(i, points);
      const double alpha = std::sqrt(x);
      rows.push_back({x, fidelity_direct(*source.machine, alpha), distortion_direct(*source.machine, alpha)});
    }
  } else {
    const double k = k1(source.couplings, source.sigma, K1Convention::paper);
    const auto dc = d1_coefficients(source.couplings);
    for (int i = 0; i < points; ++i) {
      const double x = grid_point(i, points);
      rows.push_back({x, fidelity_closed(k, x), distortion_closed(dc, x)});
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool formula_mode) {
  if (formula_mode) out << "# formula mode: fidelity = 1 - K1 x(1-x) with K1 as printed\n";
  out << "alpha_sq,fidelity,distortion\n";
  for (const auto& r : rows)
    out << format_full(r.alpha_sq) << ',' << format_full(r.fidelity) << ',' << format_full(r.distortion) << '\n';
}

std::vector<CasesRow> cases_table() {
  std::vector<CasesRow> rows;
  for (const auto name : kPresetNames) {
    const auto rec = preset_by_name<double>(name);
    const auto dc = d1_coefficients(rec.couplings);
    CasesRow row;
    row.name = rec.name;
    row.feasible = rec.feasible_as_unitary;
    row.distortion_paper = avg_distortion(dc, DistortionConstant::paper);
    row.distortion_analytic = avg_distortion(dc, DistortionConstant::analytic);
    row.fidelity_paper = avg_fidelity(k1(rec.couplings, rec.sigma, K1Convention::paper)).value;
    row.fidelity_consistent = avg_fidelity(k1(rec.couplings, rec.sigma, K1Convention::consistent)).value;
    if (rec.machine) {
      row.distortion_quadrature = avg_distortion_direct_quadrature(*rec.machine);
      row.fidelity_quadrature = avg_fidelity_quadrature(*rec.machine);
    } else {
      const double k = k1(rec.couplings, rec.sigma, K1Convention::paper);
      row.distortion_quadrature = avg_distortion_quadrature(dc);
      row.fidelity_quadrature =
          integrate_unit_interval<double>([&](double x) { return fidelity_closed(k, x); }, 1e-8).value;
    }
    row.expected_distortion = rec.expected_avg_distortion;
    row.expected_fidelity = rec.expected_avg_fidelity;
    rows.push_back(row);
  }
  return rows;
}

void render_cases(std::ostream& out, const std::vector<CasesRow>& rows) {
  const int w = 17;
  out << std::left << std::setw(9) << "preset" << std::setw(14) << "feasible" << std::setw(w) << "D_paper"
      << std::setw(w) << "D_analytic" << std::setw(w) << "D_quadrature" << std::setw(w) << "F_paper" << std::setw(w)
      << "F_consistent" << std::setw(w) << "F_quadrature" << '\n';
  for (const auto& r : rows) {
    out << std::left << std::setw(9) << r.name << std::setw(14) << (r.feasible ? "yes" : "no (formula)")
        << std::setw(w) << format_table(r.distortion_paper) << std::setw(w) << format_table(r.distortion_analytic)
        << std::setw(w) << format_table(r.distortion_quadrature) << std::setw(w) << format_table(r.fidelity_paper)
        << std::setw(w) << format_table(r.fidelity_consistent) << std::setw(w) << format_table(r.fidelity_quadrature)
        << '\n';
  }
}

DiagnoseReport diagnose(int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("diagnose: samples must be at least 1");
  const double constant_gap = std::abs(cross_term_constant<double>(DistortionConstant::paper) -
                                       cross_term_constant<double>(DistortionConstant::analytic));
  DiagnoseReport rep;
  rep.samples = samples;
  for (int i = 0; i < samples; ++i) {
    const auto p = *decode(random_search_point(seed + static_cast<std::uint64_t>(i)));
    const auto line = preset_line("sample", p);
    const double cross = d1_coefficients(couplings(p)).cross();
    rep.max_dev_distortion_paper = std::max(rep.max_dev_distortion_paper, line.distortion_dev_paper);
    rep.max_dev_distortion_analytic = std::max(rep.max_dev_distortion_analytic, line.distortion_dev_analytic);
    rep.max_dev_paper_prediction_mismatch =
        std::max(rep.max_dev_paper_prediction_mismatch,
                 std::abs(line.distortion_dev_paper - constant_gap * std::abs(cross)));
    rep.max_abs_cross_term = std::max(rep.max_abs_cross_term, std::abs(cross));
    rep.max_k1_gap = std::max(rep.max_k1_gap, std::abs(line.k1_paper - line.k1_consistent));
    rep.max_fidelity_dev_consistent = std::max(rep.max_fidelity_dev_consistent, line.fidelity_dev_consistent);
    rep.max_fidelity_dev_paper = std::max(rep.max_fidelity_dev_paper, line.fidelity_dev_paper);
  }
  for (const auto name : kPresetNames) {
    const auto rec = preset_by_name<double>(name);
    if (rec.machine) rep.presets.push_back(preset_line(rec.name, *rec.machine));
  }
  // The perfect machine again with m1p^2 = 1/2, where both K1 placements coincide.
  auto balanced = *perfect_fidelity<double>().machine;
  balanced.sigma = BlankState<double>(1.0 / std::numbers::sqrt2);
  rep.presets.push_back(preset_line("perfect@m1p=1/sqrt2", balanced));
  return rep;
}

void render_diagnose(std::ostream& out, const DiagnoseReport& r) {
  const double constant_gap = std::abs(cross_term_constant<double>(DistortionConstant::paper) -
                                       cross_term_constant<double>(DistortionConstant::analytic));
  out << "random valid machines: " << r.samples << "\n\n"
      << "average distortion, cross-term constant\n"
      << "  analytic 3pi/64 = " << format_table(cross_term_constant<double>(DistortionConstant::analytic))
      << "   max |closed - quadrature| = " << format_table(r.max_dev_distortion_analytic) << '\n'
      << "  printed 0.589           max |closed - quadrature| = " << format_table(r.max_dev_distortion_paper) << '\n'
      << "  predicted printed deviation |0.589 - 3pi/64| |M3+M4|, gap " << format_table(constant_gap)
      << ", max |M3+M4| " << format_table(r.max_abs_cross_term) << ", max mismatch "
      << format_table(r.max_dev_paper_prediction_mismatch) << "\n\n"
      << "K1 placement of m1p^2\n"
      << "  max |K1(printed) - K1(consistent)| = " << format_table(r.max_k1_gap) << '\n'
      << "  max |F_direct - F(consistent K1)|  = " << format_table(r.max_fidelity_dev_consistent) << '\n'
      << "  max |F_direct - F(printed K1)|     = " << format_table(r.max_fidelity_dev_paper) << "\n\n"
      << "presets\n";
  for (const auto& p : r.presets) {
    out << "  " << p.name << "  (m1p " << format_table(p.m1p) << ")\n"
        << "    K1 printed " << format_table(p.k1_paper) << ", K1 consistent " << format_table(p.k1_consistent)
        << "\n    avg distortion dev: printed " << format_table(p.distortion_dev_paper) << ", analytic "
        << format_table(p.distortion_dev_analytic) << "\n    fidelity dev: consistent K1 "
        << format_table(p.fidelity_dev_consistent) << ", printed K1 " << format_table(p.fidelity_dev_paper) << '\n';
  }
}

void write_history_csv(std::ostream& out, const std::vector<HistoryEntry>& history) {
  out << "restart,iteration,objective\n";
  for (const auto& h : history) out << h.restart << ',' << h.iteration << ',' << format_full(h.objective) << '\n';
}

OptResult cmd_optimize(const OptConfig& cfg, const std::filesystem::path& machine_out,
                       const std::filesystem::path& history_out, std::ostream& out) {
  const auto result = optimize(cfg);
  write_machine_file(machine_out, result.best_machine);
  {
    std::ofstream h(history_out, std::ios::binary);
    if (!h) throw std::runtime_error("cannot write '" + history_out.string() + "'");
    write_history_csv(h, result.history);
  }
  out << "best objective   " << format_table(result.best_objective) << '\n'
      << "avg fidelity     " << format_table(result.avg_fidelity) << '\n'
      << "avg distortion   " << format_table(result.avg_distortion) << '\n'
      << "iterations       " << result.iterations_used << '\n'
      << "machine written to " << machine_out.string() << '\n'
      << "history written to " << history_out.string() << '\n'
      << machine_to_json(result.best_machine);
  return result;
}

}  // namespace qdelete
