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

#include <doctest.h>

#include "oracles.hpp"
#include "qdelete/metrics.hpp"
#include "qdelete/presets.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace qdelete;
using cd = std::complex<double>;

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

Couplings<double> coupling_values(cd g, cd h, cd e, cd f) { return {g, h, e, f}; }

Couplings<double> random_couplings(std::mt19937_64& gen) {
  std::normal_distribution<double> n(0.0, 1.0);
  return {cd(n(gen), n(gen)), cd(n(gen), n(gen)), cd(n(gen), n(gen)), cd(n(gen), n(gen))};
}

double max_abs(const DensityMatrix2<double>& a, const DensityMatrix2<double>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("rho1_out_closed examples") {
  const auto c3 = couplings(*case3<double>().machine);
  const DensityMatrix2<double> half = 0.5 * DensityMatrix2<double>::Identity();
  CHECK(max_abs(rho1_out_closed(c3, 0.5), half) < 1e-15);

  std::mt19937_64 gen(1);
  CHECK(max_abs(rho1_out_closed(random_couplings(gen), 1.0), projector(ket0<double>())) == 0.0);

  const auto c2 = couplings(*case2<double>().machine);
  CHECK(max_abs(rho1_out_closed(c2, 0.5), half) < 1e-15);

  CHECK_THROWS_AS(rho1_out_closed(c2, 1.5), std::domain_error);
  CHECK_THROWS_AS(rho1_out_closed(c2, -0.01), std::domain_error);
}

TEST_CASE("rho2_out_closed examples") {
  std::mt19937_64 gen(2);
  const BlankState<double> sigma(0.35);
  CHECK(max_abs(rho2_out_closed(random_couplings(gen), sigma, 0.0), projector(sigma.ket())) == 0.0);

  const auto rec3 = case3<double>();
  const DensityMatrix2<double> expected =
      0.5 * projector(rec3.sigma.ket()) + 0.25 * DensityMatrix2<double>::Identity();
  CHECK(max_abs(rho2_out_closed(rec3.couplings, rec3.sigma, 0.5), expected) < 1e-15);

  const auto perfect = perfect_fidelity<double>();
  for (double x : {0.0, 0.2, 0.5, 0.8, 1.0})
    CHECK(max_abs(rho2_out_closed(perfect.couplings, perfect.sigma, x), projector(ket0<double>())) < 1e-15);

  CHECK_THROWS_AS(rho2_out_closed(rec3.couplings, rec3.sigma, 2.0), std::domain_error);
}

TEST_CASE("d1_coefficients examples") {
  const auto z = d1_coefficients(coupling_values(0, 0, 0, 0));
  CHECK(z.K == 2.0);
  CHECK(z.L == 2.0);
  CHECK(z.M3 == cd(0.0));
  CHECK(z.M4 == cd(0.0));

  const auto c2 = d1_coefficients(couplings(*case2<double>().machine));
  CHECK(c2.K == 0.0);
  CHECK(c2.L == 0.0);
  CHECK(c2.M3 == cd(0.0));
  CHECK(c2.M4 == cd(0.0));

  const auto c3 = d1_coefficients(coupling_values(1, 1, 0, 0));
  CHECK(c3.M1 == 1.0);
  CHECK(c3.M2 == 1.0);
  CHECK(c3.K == 0.0);
  CHECK(c3.L == 0.0);
}

TEST_CASE("D1 coefficients: M4 = conj(M3), M3 + M4 real, L >= K") {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = d1_coefficients(random_couplings(gen));
    CHECK(std::abs(d.M4 - std::conj(d.M3)) < 1e-14);
    CHECK(std::abs(std::imag(d.M3 + d.M4)) < 1e-14);
    CHECK(std::abs(std::imag(d.M3 * d.M4)) < 1e-12);
    CHECK(std::real(d.M3 * d.M4) >= 0.0);
    CHECK(d.K >= 0.0);
    CHECK(d.L >= d.K);
  }
}

TEST_CASE("distortion_closed examples") {
  std::mt19937_64 gen(4);
  const auto any = d1_coefficients(random_couplings(gen));
  CHECK(distortion_closed(any, 0.0) == 0.0);
  CHECK(distortion_closed(any, 1.0) == 0.0);
  CHECK(distortion_closed(d1_coefficients(coupling_values(1, 1, 0, 0)), 0.5) == doctest::Approx(0.5));
  CHECK(distortion_closed(d1_coefficients(coupling_values(0, 0, 0, 0)), 0.5) == doctest::Approx(0.625));
  // Cross-check case 1 against the squared HS distance of the closed-form states.
  CHECK(hs_distance_sq(ideal_density(0.5), rho1_out_closed(coupling_values(0, 0, 0, 0), 0.5)) ==
        doctest::Approx(0.625));
  CHECK_THROWS_AS(distortion_closed(any, 1.2), std::domain_error);
}

TEST_CASE("distortion_direct examples") {
  const auto m3 = *case3<double>().machine;
  const auto m2 = *case2<double>().machine;
  CHECK(distortion_direct(m3, 1.0) == doctest::Approx(0.0));
  CHECK(distortion_direct(m3, kInvSqrt2) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(distortion_direct(m2, kInvSqrt2) == doctest::Approx(0.5).epsilon(1e-14));

  MachineParams<double> bad;
  bad.a0() = 1.0;
  bad.a1() = 1.0;
  CHECK_THROWS_AS(distortion_direct(bad, 0.5), std::domain_error);
  CHECK_THROWS_AS(fidelity_direct(bad, 0.5), std::domain_error);
  CHECK_THROWS_AS(avg_fidelity_quadrature(bad), std::domain_error);
}

TEST_CASE("avg_distortion examples") {
  const auto z = d1_coefficients(coupling_values(0, 0, 0, 0));
  CHECK(avg_distortion(z, DistortionConstant::paper) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(avg_distortion(z, DistortionConstant::analytic) == doctest::Approx(0.4).epsilon(1e-15));
  for (const auto& rec : {case2<double>(), case3<double>()}) {
    const auto d = d1_coefficients(rec.couplings);
    CHECK(avg_distortion(d, DistortionConstant::paper) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(avg_distortion(d, DistortionConstant::analytic) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  }
  D1Coefficients<double> unit_cross;
  unit_cross.M3 = 0.5;
  unit_cross.M4 = 0.5;
  CHECK(avg_distortion(unit_cross, DistortionConstant::paper) == doctest::Approx(1.0 / 3.0 - 0.589));
  CHECK(avg_distortion(unit_cross, DistortionConstant::analytic) ==
        doctest::Approx(1.0 / 3.0 - 3 * std::numbers::pi / 64).epsilon(1e-15));
  CHECK(avg_distortion(unit_cross, DistortionConstant::analytic) == doctest::Approx(0.1860711777).epsilon(1e-9));
}

TEST_CASE("avg_distortion_quadrature examples") {
  CHECK(std::abs(avg_distortion_quadrature(d1_coefficients(coupling_values(0, 0, 0, 0))) - 0.4) < 1e-8);
  CHECK(std::abs(avg_distortion_quadrature(d1_coefficients(coupling_values(1, 1, 0, 0))) - 1.0 / 3.0) < 1e-8);
  D1Coefficients<double> unit_cross;
  unit_cross.M3 = 0.5;
  unit_cross.M4 = 0.5;
  const double q = avg_distortion_quadrature(unit_cross);
  CHECK(std::abs(q - (1.0 / 3.0 - 3 * std::numbers::pi / 64)) < 1e-6);
  // The printed constant is far off the integral.
  CHECK(std::abs(q - avg_distortion(unit_cross, DistortionConstant::paper)) > 0.4);
}

TEST_CASE("quadrature closure of the average distortion against Beta-function integrals") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = d1_coefficients(random_couplings(gen));
    const double beta_oracle = oracle::avg_distortion_beta(d.L, d.cross());
    CHECK(std::abs(avg_distortion_quadrature(d) - beta_oracle) < 1e-8);
    CHECK(std::abs(avg_distortion(d, DistortionConstant::analytic) - beta_oracle) < 1e-10 * std::max(1.0, d.L));
  }
}

TEST_CASE("fidelity_direct examples") {
  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = oracle::random_valid_machine(gen);
    CHECK(fidelity_direct(p, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fidelity_direct(p, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(distortion_direct(p, 0.0) < 1e-14);
    CHECK(distortion_direct(p, 1.0) < 1e-14);
  }
  CHECK(fidelity_direct(*case3<double>().machine, kInvSqrt2) == doctest::Approx(0.75).epsilon(1e-14));
  const auto perfect = *perfect_fidelity<double>().machine;
  for (double x : {0.0, 0.25, 0.5, 0.75, 1.0}) CHECK(fidelity_direct(perfect, std::sqrt(x)) == doctest::Approx(1.0));
}

TEST_CASE("k1 examples in both conventions") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto mode : {K1Convention::paper, K1Convention::consistent}) {
    CHECK(k1(coupling_values(0, 0, 0, 0), BlankState<double>(u(gen)), mode) == doctest::Approx(2.0));
    for (int trial = 0; trial < 10; ++trial) {
      const BlankState<double> sigma(u(gen));
      CHECK(k1(couplings(*case2<double>().machine), sigma, mode) == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(k1(couplings(*case3<double>().machine), sigma, mode) == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("k1 conventions coincide when |g|^2+|f|^2 = |h|^2+|e|^2 or m1p^2 = 1/2") {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = random_couplings(gen);
    const BlankState<double> balanced(trial % 2 ? kInvSqrt2 : -kInvSqrt2);
    CHECK(k1(c, balanced, K1Convention::paper) ==
          doctest::Approx(k1(c, balanced, K1Convention::consistent)).epsilon(1e-13));

    // Rescale (h, e) so both weight sums match.
    const double gf = std::norm(c.g) + std::norm(c.f), he = std::norm(c.h) + std::norm(c.e);
    c.h *= std::sqrt(gf / he);
    c.e *= std::sqrt(gf / he);
    const BlankState<double> sigma(u(gen));
    CHECK(k1(c, sigma, K1Convention::paper) == doctest::Approx(k1(c, sigma, K1Convention::consistent)).epsilon(1e-12));
  }
}

TEST_CASE("avg_fidelity examples and range flag") {
  CHECK(avg_fidelity(2.0).value == doctest::Approx(2.0 / 3.0));
  CHECK(avg_fidelity(1.0).value == doctest::Approx(5.0 / 6.0));
  CHECK(avg_fidelity(0.0).value == 1.0);
  CHECK(avg_fidelity(1.0).k1_in_range);
  CHECK_FALSE(avg_fidelity(0.0).k1_in_range);
  CHECK_FALSE(avg_fidelity(7.0).k1_in_range);
  CHECK(avg_fidelity(7.0).value == doctest::Approx(1.0 - 7.0 / 6.0));
}

TEST_CASE("case4_metrics examples") {
  const BlankState<double> sigma(0.3);
  auto m = case4_metrics(coupling_values(cd(0, 1), cd(1, 0), 0, 0), sigma);
  CHECK(m.coefficients.n_case4 == doctest::Approx(0.0));
  CHECK(m.avg_distortion == doctest::Approx(1.0 / 3.0));
  CHECK(m.avg_fidelity == doctest::Approx(5.0 / 6.0));

  m = case4_metrics(coupling_values(0, 0, 0, 0), sigma);
  CHECK(m.coefficients.n_case4 == 2.0);
  CHECK(m.avg_distortion == doctest::Approx(0.4));

  m = case4_metrics(coupling_values(1, 0, 0, 0), BlankState<double>(1.0));
  CHECK(m.coefficients.n_case4 == 1.0);
  CHECK(m.avg_distortion == doctest::Approx(11.0 / 30.0));
  CHECK(m.coefficients.k2 == 1.0);
  CHECK(m.avg_fidelity == doctest::Approx(5.0 / 6.0));
  // Consistent placement of m1p^2 puts the weight on |h|^2 = 0.
  CHECK(m.coefficients.k2_consistent == 2.0);
  CHECK(m.avg_fidelity_consistent == doctest::Approx(2.0 / 3.0));

  CHECK_THROWS_AS(case4_metrics(coupling_values(1, 1, 0.5, 0), sigma), std::invalid_argument);
  CHECK_THROWS_AS(case4_metrics(coupling_values(1, 1, 0, cd(0, 1)), sigma), std::invalid_argument);
}

TEST_CASE("case4 closed forms agree with the general closed forms when e = f = 0") {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    auto c = random_couplings(gen);
    c.e = 0;
    c.f = 0;
    const BlankState<double> sigma(u(gen));
    const auto m = case4_metrics(c, sigma);
    CHECK(m.avg_distortion == doctest::Approx(avg_distortion(d1_coefficients(c), DistortionConstant::analytic)));
    CHECK(m.coefficients.k2 == doctest::Approx(k1(c, sigma, K1Convention::paper)));
    CHECK(m.coefficients.k2_consistent == doctest::Approx(k1(c, sigma, K1Convention::consistent)));
  }
}

TEST_CASE("avg_fidelity_quadrature examples") {
  CHECK(std::abs(avg_fidelity_quadrature(*case3<double>().machine) - 5.0 / 6.0) < 1e-8);
  CHECK(std::abs(avg_fidelity_quadrature(*case2<double>().machine) - 5.0 / 6.0) < 1e-8);
  CHECK(std::abs(avg_fidelity_quadrature(*perfect_fidelity<double>().machine) - 1.0) < 1e-10);
}

TEST_CASE("closed forms agree with the direct route on random valid machines") {
  std::mt19937_64 gen(10);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = oracle::random_valid_machine(gen);
    const auto c = couplings(p);
    const auto d = d1_coefficients(c);
    const double kc = k1(c, p.sigma, K1Convention::consistent);
    for (int i = 0; i <= 20; ++i) {
      const double x = i / 20.0;
      const double alpha = std::sqrt(x);
      const auto psi = apply(p, alpha);
      const auto psi_oracle = oracle::output_state(p, alpha);
      const auto rho1 = rho1_out_closed(c, x);
      const auto rho2 = rho2_out_closed(c, p.sigma, x);
      CHECK(max_abs(rho1, partial_trace_mode1(psi)) < 1e-10);
      CHECK(max_abs(rho2, partial_trace_mode2(psi)) < 1e-10);
      CHECK(oracle::max_abs_diff(rho1, oracle::reduced_mode1(psi_oracle)) < 1e-10);
      CHECK(oracle::max_abs_diff(rho2, oracle::reduced_mode2(psi_oracle)) < 1e-10);
      CHECK(std::abs(distortion_closed(d, x) - distortion_direct(p, alpha)) < 1e-10);
      CHECK(std::abs(fidelity_direct(p, alpha) - fidelity_closed(kc, x)) < 1e-10);
    }
  }
}

TEST_CASE("average fidelity by quadrature matches 1 - K1/6 and a Simpson oracle") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = oracle::random_valid_machine(gen);
    const double kc = k1(couplings(p), p.sigma, K1Convention::consistent);
    const double q = avg_fidelity_quadrature(p);
    CHECK(std::abs(q - avg_fidelity(kc).value) < 1e-8);
    const auto sig = p.sigma.ket();
    const double simpson = oracle::simpson(
        [&](double x) {
          const auto rho = oracle::reduced_mode2(oracle::output_state(p, std::sqrt(x)));
          return std::real(sig.dot(rho * sig));
        },
        200);
    CHECK(std::abs(q - simpson) < 1e-10);
    CHECK(std::abs(avg_distortion_direct_quadrature(p) -
                   avg_distortion(d1_coefficients(couplings(p)), DistortionConstant::analytic)) < 1e-8);
  }
}

TEST_CASE("metrics templates instantiate for long double") {
  const Couplings<long double> c{1.0L, 1.0L, 0.0L, 0.0L};
  const auto d = d1_coefficients(c);
  CHECK(static_cast<double>(avg_distortion(d, DistortionConstant::analytic)) == doctest::Approx(1.0 / 3.0));
  CHECK(static_cast<double>(avg_distortion_quadrature(d, 1e-12L)) == doctest::Approx(1.0 / 3.0));
}
