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

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdelete {

/// Gauss-Legendre nodes and weights mapped to [0, 1].
template <typename Scalar> struct GaussLegendreRule {
  std::vector<Scalar> nodes;
  std::vector<Scalar> weights;

  int order() const { return static_cast<int>(nodes.size()); }

  template <typename F> Scalar integrate(F&& f) const {
    Scalar sum = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

/// Newton iteration on P_n from the Chebyshev-like initial guesses, then map [-1,1] -> [0,1].
template <typename Scalar> GaussLegendreRule<Scalar> make_gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre order must be positive");
  GaussLegendreRule<Scalar> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    Scalar z = std::cos(pi * (Scalar(i) + Scalar(0.75)) / (Scalar(n) + Scalar(0.5)));
    Scalar dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      Scalar p0 = 1, p1 = 0;
      for (int k = 1; k <= n; ++k) {
        const Scalar p2 = p1;
        p1 = p0;
        p0 = ((Scalar(2 * k - 1)) * z * p1 - Scalar(k - 1) * p2) / Scalar(k);
      }
      dp = Scalar(n) * (z * p0 - p1) / (z * z - Scalar(1));
      const Scalar dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) <= 4 * eps) break;
    }
    const Scalar w = Scalar(2) / ((Scalar(1) - z * z) * dp * dp);
    // z is the i-th largest root; mirror it for the lower half.
    rule.nodes[i] = (Scalar(1) - z) / Scalar(2);
    rule.nodes[n - 1 - i] = (Scalar(1) + z) / Scalar(2);
    rule.weights[i] = w / Scalar(2);
    rule.weights[n - 1 - i] = w / Scalar(2);
  }
  return rule;
}

/// Refinement ladder 64, 128, 256, 512, 1024 points, built once per scalar type.
inline constexpr int kQuadratureBaseOrder = 64;
inline constexpr int kQuadratureLevels = 5;

template <typename Scalar> const GaussLegendreRule<Scalar>& gauss_legendre_level(int level) {
  static const auto rules = [] {
    std::array<GaussLegendreRule<Scalar>, kQuadratureLevels> r;
    for (int l = 0; l < kQuadratureLevels; ++l) r[l] = make_gauss_legendre<Scalar>(kQuadratureBaseOrder << l);
    return r;
  }();
  if (level < 0 || level >= kQuadratureLevels) throw std::out_of_range("quadrature level");
  return rules[level];
}

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename Scalar> struct QuadratureResult {
  Scalar value{};
  /// |I_n - I_{n/2}| at the accepted level.
  Scalar error_estimate{};
  int order = 0;
};

/// Integrates f over [0, 1], doubling the Gauss-Legendre order from 64 until
/// two successive levels agree within tol. Throws QuadratureError otherwise.
template <typename Scalar, typename F> QuadratureResult<Scalar> integrate_unit_interval(F&& f, Scalar tol) {
  Scalar prev = gauss_legendre_level<Scalar>(0).integrate(f);
  Scalar last_gap = 0;
  for (int level = 1; level < kQuadratureLevels; ++level) {
    const auto& rule = gauss_legendre_level<Scalar>(level);
    const Scalar cur = rule.integrate(f);
    last_gap = std::abs(cur - prev);
    if (!std::isfinite(cur)) break;
    if (last_gap <= tol) return {cur, last_gap, rule.order()};
    prev = cur;
  }
  throw QuadratureError("quadrature did not converge: last refinement gap " + std::to_string(double(last_gap)));
}

}  // namespace qdelete
