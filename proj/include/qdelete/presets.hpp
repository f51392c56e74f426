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

/**
 * @file presets.hpp
 * Named machines with their expected average distortion and fidelity.
 *
 *  case1    e = f = g = h = 0. Not realizable by any isometry (it forces
 *           row1 = -row0), so it only exists as couplings ("formula mode").
 *  case2    c0 = d1 = 1: |e| = |f| = 1, g = h = 0.
 *  case3    a0 = b1 = 1: the Pati-Braunstein machine, g = h = 1.
 *  case4    c = d = 0 family; the named instance has |g| = |h| = 1 with phases.
 *  perfect  b0 = c1 = 1 with |S> = |0>: mode 2 always ends in |0><0|.
 *           Its couplings e = h = 1 give M3 = 1, so the average distortion is
 *           2/5 - 3 pi / 32.
 */

#include "qdelete/machine.hpp"
#include "qdelete/metrics.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qdelete {

template <typename Scalar> struct PresetRecord {
  std::string name;
  /// Empty for formula-mode presets.
  std::optional<MachineParams<Scalar>> machine;
  Couplings<Scalar> couplings;
  BlankState<Scalar> sigma;
  Scalar expected_avg_distortion{};
  Scalar expected_avg_fidelity{};
  bool feasible_as_unitary = false;
};

inline constexpr std::array<std::string_view, 5> kPresetNames{"case1", "case2", "case3", "case4", "perfect"};

namespace detail {

template <typename Scalar> BlankState<Scalar> default_sigma() {
  return BlankState<Scalar>(Scalar(1) / std::numbers::sqrt2_v<Scalar>);
}

template <typename Scalar> PresetRecord<Scalar> from_machine(std::string name, MachineParams<Scalar> p, Scalar d, Scalar f) {
  PresetRecord<Scalar> r;
  r.name = std::move(name);
  r.couplings = couplings(p);
  r.sigma = p.sigma;
  r.machine = std::move(p);
  r.expected_avg_distortion = d;
  r.expected_avg_fidelity = f;
  r.feasible_as_unitary = true;
  return r;
}

}  // namespace detail

template <typename Scalar> PresetRecord<Scalar> case1() {
  PresetRecord<Scalar> r;
  r.name = "case1";
  r.sigma = detail::default_sigma<Scalar>();
  r.expected_avg_distortion = Scalar(2) / Scalar(5);
  r.expected_avg_fidelity = Scalar(2) / Scalar(3);
  r.feasible_as_unitary = false;
  return r;
}

template <typename Scalar> PresetRecord<Scalar> case2(BlankState<Scalar> sigma = detail::default_sigma<Scalar>()) {
  MachineParams<Scalar> p;
  p.c0() = Scalar(1);
  p.d1() = Scalar(1);
  p.sigma = sigma;
  return detail::from_machine<Scalar>("case2", p, Scalar(1) / Scalar(3), Scalar(5) / Scalar(6));
}

template <typename Scalar> PresetRecord<Scalar> case3(BlankState<Scalar> sigma = detail::default_sigma<Scalar>()) {
  MachineParams<Scalar> p;
  p.a0() = Scalar(1);
  p.b1() = Scalar(1);
  p.sigma = sigma;
  return detail::from_machine<Scalar>("case3", p, Scalar(1) / Scalar(3), Scalar(5) / Scalar(6));
}

/// Machine with c0 = c1 = d0 = d1 = 0. Expected values are the closed forms
/// for that family, with K2 as printed.
template <typename Scalar>
PresetRecord<Scalar> case4(Complex<Scalar> a0, Complex<Scalar> a1, Complex<Scalar> b0, Complex<Scalar> b1,
                           BlankState<Scalar> sigma = detail::default_sigma<Scalar>()) {
  MachineParams<Scalar> p;
  p.a0() = a0;
  p.a1() = a1;
  p.b0() = b0;
  p.b1() = b1;
  p.sigma = sigma;
  if (!validate(p, Scalar(kDefaultValidationTol)).is_valid)
    throw std::invalid_argument("case4: rows (a0, b0) and (a1, b1) must be orthonormal");
  const auto m = case4_metrics(couplings(p), sigma);
  return detail::from_machine<Scalar>("case4", p, m.avg_distortion, m.avg_fidelity);
}

/// Named case-4 instance: a0 = b1 = 1/sqrt2, b0 = a1 = i/sqrt2, so |g| = |h| = 1.
template <typename Scalar> PresetRecord<Scalar> case4() {
  const Scalar r = Scalar(1) / std::numbers::sqrt2_v<Scalar>;
  const Complex<Scalar> ir(Scalar(0), r);
  return case4<Scalar>(Complex<Scalar>(r), ir, ir, Complex<Scalar>(r));
}

template <typename Scalar> PresetRecord<Scalar> perfect_fidelity() {
  MachineParams<Scalar> p;
  p.b0() = Scalar(1);
  p.c1() = Scalar(1);
  p.sigma = BlankState<Scalar>(Scalar(1));
  const Scalar distortion = Scalar(2) / Scalar(5) - Scalar(3) * std::numbers::pi_v<Scalar> / Scalar(32);
  return detail::from_machine<Scalar>("perfect", p, distortion, Scalar(1));
}

/// Looks up a preset by CLI name; throws std::invalid_argument for unknown names.
template <typename Scalar> PresetRecord<Scalar> preset_by_name(std::string_view name) {
  if (name == "case1") return case1<Scalar>();
  if (name == "case2") return case2<Scalar>();
  if (name == "case3") return case3<Scalar>();
  if (name == "case4") return case4<Scalar>();
  if (name == "perfect") return perfect_fidelity<Scalar>();
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

}  // namespace qdelete
