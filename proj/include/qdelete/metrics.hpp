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
 * @file metrics.hpp
 * Distortion of the retained mode and fidelity of deletion of the blank mode.
 *
 * Every quantity has two routes: a closed form in the couplings (g, h, e, f)
 * and a direct route that applies the machine to |psi>|psi>|Q> and takes
 * partial traces. Averages are over x = alpha^2 uniformly on [0, 1].
 *
 * Two closed forms exist in published variants that disagree with the direct
 * route; both variants are kept behind explicit mode flags:
 *  - the alpha^3 beta^3 coefficient of the average distortion, printed as
 *    0.589 versus 2 * B(5/2, 5/2) = 3 pi / 64 from the integral itself;
 *  - the placement of m1p^2 in K1 (on |g|^2+|f|^2 versus |h|^2+|e|^2).
 */

#include "qdelete/machine.hpp"
#include "qdelete/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qdelete {

/// rho_ID = |psi><psi| for psi = sqrt(x)|0> + sqrt(1-x)|1>.
template <typename Scalar> DensityMatrix2<Scalar> ideal_density(Scalar alpha_sq) {
  require_unit_interval(alpha_sq, "alpha_sq");
  const Scalar ab = std::sqrt(alpha_sq * (Scalar(1) - alpha_sq));
  DensityMatrix2<Scalar> rho;
  rho << alpha_sq, ab, ab, Scalar(1) - alpha_sq;
  return rho;
}

/// Reduced output state of mode 1 from the couplings.
template <typename Scalar> DensityMatrix2<Scalar> rho1_out_closed(const Couplings<Scalar>& c, Scalar alpha_sq) {
  require_unit_interval(alpha_sq, "alpha_sq");
  const Scalar x = alpha_sq, y = Scalar(1) - alpha_sq, xy = x * y;
  DensityMatrix2<Scalar> rho;
  rho(0, 0) = x * x + xy * (std::norm(c.g) + std::norm(c.e));
  rho(1, 1) = y * y + xy * (std::norm(c.f) + std::norm(c.h));
  rho(0, 1) = xy * (c.e * std::conj(c.h) + c.g * std::conj(c.f));
  rho(1, 0) = xy * (c.f * std::conj(c.g) + std::conj(c.e) * c.h);
  return rho;
}

/// Reduced output state of mode 2 from the couplings and the blank state.
template <typename Scalar>
DensityMatrix2<Scalar> rho2_out_closed(const Couplings<Scalar>& c, const BlankState<Scalar>& sigma, Scalar alpha_sq) {
  require_unit_interval(alpha_sq, "alpha_sq");
  const Scalar x = alpha_sq, y = Scalar(1) - alpha_sq, xy = x * y;
  DensityMatrix2<Scalar> rho = (x * x + y * y) * projector(sigma.ket());
  rho(0, 0) += xy * (std::norm(c.h) + std::norm(c.e));
  rho(1, 1) += xy * (std::norm(c.g) + std::norm(c.f));
  rho(0, 1) += xy * (std::conj(c.g) * c.e + c.h * std::conj(c.f));
  rho(1, 0) += xy * (std::conj(c.e) * c.g + std::conj(c.h) * c.f);
  return rho;
}

/// Coefficients of D1(x) = L x^2 (1-x)^2 - 2 (M3 + M4) (x(1-x))^{3/2} + 2 x (1-x).
template <typename Scalar> struct D1Coefficients {
  Scalar M1{}, M2{};
  Complex<Scalar> M3{}, M4{};
  Scalar K{}, L{};

  /// M3 + M4 = 2 Re M3.
  Scalar cross() const { return std::real(M3 + M4); }
};

template <typename Scalar> D1Coefficients<Scalar> d1_coefficients(const Couplings<Scalar>& c) {
  D1Coefficients<Scalar> d;
  d.M1 = std::norm(c.e) + std::norm(c.g);
  d.M2 = std::norm(c.h) + std::norm(c.f);
  d.M3 = c.e * std::conj(c.h) + c.g * std::conj(c.f);
  d.M4 = c.h * std::conj(c.e) + c.f * std::conj(c.g);
  d.K = (d.M1 - Scalar(1)) * (d.M1 - Scalar(1)) + (d.M2 - Scalar(1)) * (d.M2 - Scalar(1));
  // M3 M4 = |M3|^2 exactly since M4 = conj(M3).
  d.L = d.K + Scalar(2) * std::norm(d.M3);
  return d;
}

template <typename Scalar> Scalar distortion_closed(const D1Coefficients<Scalar>& dc, Scalar alpha_sq) {
  require_unit_interval(alpha_sq, "alpha_sq");
  const Scalar xy = alpha_sq * (Scalar(1) - alpha_sq);
  return dc.L * xy * xy - Scalar(2) * dc.cross() * xy * std::sqrt(xy) + Scalar(2) * xy;
}

namespace detail {

template <typename Scalar> Scalar distortion_unchecked(const MachineParams<Scalar>& p, Scalar alpha) {
  return hs_distance_sq(ideal_density(std::min(Scalar(1), alpha * alpha)), partial_trace_mode1(apply(p, alpha)));
}

template <typename Scalar> Scalar fidelity_unchecked(const MachineParams<Scalar>& p, Scalar alpha) {
  return expectation(partial_trace_mode2(apply(p, alpha)), p.sigma.ket());
}

}  // namespace detail

/// Tr[(rho_ID - rho_1)^2] by applying the machine and tracing out modes 2 and 3.
template <typename Scalar> Scalar distortion_direct(const MachineParams<Scalar>& p, Scalar alpha) {
  require_valid(p);
  require_unit_interval(alpha, "alpha");
  return detail::distortion_unchecked(p, alpha);
}

enum class DistortionConstant {
  paper,    ///< 0.589 as printed
  analytic  ///< 3 pi / 64 = 2 * integral of (x(1-x))^{3/2} over [0, 1]
};

template <typename Scalar> Scalar cross_term_constant(DistortionConstant mode) {
  return mode == DistortionConstant::paper ? Scalar(0.589) : Scalar(3) * std::numbers::pi_v<Scalar> / Scalar(64);
}

/// Average of D1 over x: L/30 + 1/3 - C (M3 + M4).
template <typename Scalar> Scalar avg_distortion(const D1Coefficients<Scalar>& dc, DistortionConstant mode) {
  return dc.L / Scalar(30) + Scalar(1) / Scalar(3) - cross_term_constant<Scalar>(mode) * dc.cross();
}

template <typename Scalar>
Scalar avg_distortion_quadrature(const D1Coefficients<Scalar>& dc, Scalar tol = Scalar(1e-8)) {
  return integrate_unit_interval<Scalar>([&](Scalar x) { return distortion_closed(dc, x); }, tol).value;
}

/// <S| rho_2 |S> by applying the machine and tracing out modes 1 and 3.
template <typename Scalar> Scalar fidelity_direct(const MachineParams<Scalar>& p, Scalar alpha) {
  require_valid(p);
  require_unit_interval(alpha, "alpha");
  return detail::fidelity_unchecked(p, alpha);
}

enum class K1Convention {
  paper,      ///< m1p^2 multiplies |g|^2 + |f|^2
  consistent  ///< m1p^2 multiplies |h|^2 + |e|^2, as <S|rho_2|S> requires
};

/// F1(x) = 1 - K1 x (1 - x).
template <typename Scalar> Scalar k1(const Couplings<Scalar>& c, const BlankState<Scalar>& sigma, K1Convention mode) {
  const Scalar m = sigma.m1p();
  const Scalar m_sq = m * m;
  const Scalar gf = std::norm(c.g) + std::norm(c.f);
  const Scalar he = std::norm(c.h) + std::norm(c.e);
  const Scalar cross =
      std::real(std::conj(c.g) * c.e + std::conj(c.h) * c.f + std::conj(c.e) * c.g + c.h * std::conj(c.f));
  const Scalar mixed = m * sigma.m1p_complement() * cross;
  if (mode == K1Convention::paper) return Scalar(2) - (gf * m_sq + he * (Scalar(1) - m_sq) + mixed);
  return Scalar(2) - (he * m_sq + gf * (Scalar(1) - m_sq) + mixed);
}

template <typename Scalar> Scalar fidelity_closed(Scalar k1_value, Scalar alpha_sq) {
  require_unit_interval(alpha_sq, "alpha_sq");
  return Scalar(1) - k1_value * alpha_sq * (Scalar(1) - alpha_sq);
}

template <typename Scalar> struct AverageFidelity {
  Scalar value{};
  /// False when K1 lies outside (0, 6); the value is still 1 - K1/6.
  bool k1_in_range = true;
};

template <typename Scalar> AverageFidelity<Scalar> avg_fidelity(Scalar k1_value) {
  return {Scalar(1) - k1_value / Scalar(6), k1_value > Scalar(0) && k1_value < Scalar(6)};
}

template <typename Scalar>
Scalar avg_fidelity_quadrature(const MachineParams<Scalar>& p, Scalar tol = Scalar(1e-8)) {
  require_valid(p);
  return integrate_unit_interval<Scalar>(
             [&](Scalar x) { return detail::fidelity_unchecked(p, std::sqrt(x)); }, tol)
      .value;
}

template <typename Scalar>
Scalar avg_distortion_direct_quadrature(const MachineParams<Scalar>& p, Scalar tol = Scalar(1e-8)) {
  require_valid(p);
  return integrate_unit_interval<Scalar>(
             [&](Scalar x) { return detail::distortion_unchecked(p, std::sqrt(x)); }, tol)
      .value;
}

template <typename Scalar> struct FidelityCoefficients {
  Scalar k1_paper{};
  Scalar k1_consistent{};
  /// K2 as printed for the e = f = 0 family, and its consistent counterpart.
  Scalar k2{};
  Scalar k2_consistent{};
  /// N = (|g|^2 - 1)^2 + (|h|^2 - 1)^2
  Scalar n_case4{};
};

template <typename Scalar>
FidelityCoefficients<Scalar> fidelity_coefficients(const Couplings<Scalar>& c, const BlankState<Scalar>& sigma) {
  FidelityCoefficients<Scalar> fc;
  fc.k1_paper = k1(c, sigma, K1Convention::paper);
  fc.k1_consistent = k1(c, sigma, K1Convention::consistent);
  const Scalar m_sq = sigma.m1p() * sigma.m1p();
  const Scalar gg = std::norm(c.g), hh = std::norm(c.h);
  fc.k2 = Scalar(2) - (gg * m_sq + hh * (Scalar(1) - m_sq));
  fc.k2_consistent = Scalar(2) - (hh * m_sq + gg * (Scalar(1) - m_sq));
  fc.n_case4 = (gg - Scalar(1)) * (gg - Scalar(1)) + (hh - Scalar(1)) * (hh - Scalar(1));
  return fc;
}

template <typename Scalar> struct Case4Metrics {
  FidelityCoefficients<Scalar> coefficients;
  Scalar avg_distortion{};
  /// 1 - K2/6 with K2 as printed.
  Scalar avg_fidelity{};
  Scalar avg_fidelity_consistent{};
};

/// Averages for machines with c0 = c1 = d0 = d1 = 0, i.e. e = f = 0.
template <typename Scalar>
Case4Metrics<Scalar> case4_metrics(const Couplings<Scalar>& c, const BlankState<Scalar>& sigma,
                                   Scalar tol = Scalar(kDefaultValidationTol)) {
  if (std::abs(c.e) > tol || std::abs(c.f) > tol)
    throw std::invalid_argument("case4_metrics: requires e = f = 0");
  Case4Metrics<Scalar> m;
  m.coefficients = fidelity_coefficients(c, sigma);
  m.avg_distortion = m.coefficients.n_case4 / Scalar(30) + Scalar(1) / Scalar(3);
  m.avg_fidelity = Scalar(1) - m.coefficients.k2 / Scalar(6);
  m.avg_fidelity_consistent = Scalar(1) - m.coefficients.k2_consistent / Scalar(6);
  return m;
}

}  // namespace qdelete
