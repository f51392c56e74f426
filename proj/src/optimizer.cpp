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

#include "qdelete/optimizer.hpp"

#include "qdelete/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

namespace qdelete {

namespace {

using Row = MachineParams<double>::Row;

constexpr double kDegenerateTol = 1e-12;

Row unpack_row(const SearchPoint& raw, int offset) {
  Row v;
  for (int k = 0; k < 4; ++k) v(k) = {raw[offset + 2 * k], raw[offset + 2 * k + 1]};
  return v;
}

void pack_row(const Row& v, SearchPoint& raw, int offset) {
  for (int k = 0; k < 4; ++k) {
    raw[offset + 2 * k] = v(k).real();
    raw[offset + 2 * k + 1] = v(k).imag();
  }
}

double cost(const SearchPoint& x, const OptConfig& cfg) {
  const auto p = decode(x);
  if (!p) return std::numeric_limits<double>::infinity();
  try {
    return -evaluate(*p, cfg);
  } catch (const QuadratureError&) {
    return std::numeric_limits<double>::infinity();
  }
}

struct LocalRun {
  SearchPoint best_point{};
  double best_cost = std::numeric_limits<double>::infinity();
  int iterations = 0;
  /// Best-so-far cost of this run after each iteration (index 0: initial simplex).
  std::vector<double> trace;
};

// Nelder-Mead with dimension-adaptive coefficients (Gao & Han 2012).
LocalRun nelder_mead(const SearchPoint& start, const OptConfig& cfg) {
  constexpr int n = kSearchDim;
  const double reflect = 1.0;
  const double expand = 1.0 + 2.0 / n;
  const double contract = 0.75 - 1.0 / (2.0 * n);
  const double shrink = 1.0 - 1.0 / n;
  constexpr double kStep = 0.5;

  std::array<SearchPoint, n + 1> simplex;
  std::array<double, n + 1> f;
  simplex[0] = start;
  for (int i = 0; i < n; ++i) {
    simplex[i + 1] = start;
    simplex[i + 1][i] += kStep;
  }
  for (int i = 0; i <= n; ++i) f[i] = cost(simplex[i], cfg);

  std::array<int, n + 1> order;
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return f[a] < f[b]; });
    auto s = simplex;
    auto g = f;
    for (int i = 0; i <= n; ++i) {
      simplex[i] = s[order[i]];
      f[i] = g[order[i]];
    }
  };
  auto affine = [](const SearchPoint& a, const SearchPoint& b, double t) {
    // a + t (b - a)
    SearchPoint r;
    for (int k = 0; k < n; ++k) r[k] = a[k] + t * (b[k] - a[k]);
    return r;
  };

  LocalRun run;
  sort_simplex();
  run.best_point = simplex[0];
  run.best_cost = f[0];
  run.trace.push_back(run.best_cost);

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    if (std::isfinite(f[n]) && f[n] - f[0] <= cfg.tol) break;
    SearchPoint centroid{};
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) centroid[k] += simplex[i][k] / n;

    const SearchPoint xr = affine(centroid, simplex[n], -reflect);
    const double fr = cost(xr, cfg);
    if (fr < f[0]) {
      const SearchPoint xe = affine(centroid, simplex[n], -reflect * expand);
      const double fe = cost(xe, cfg);
      if (fe < fr) {
        simplex[n] = xe;
        f[n] = fe;
      } else {
        simplex[n] = xr;
        f[n] = fr;
      }
    } else if (fr < f[n - 1]) {
      simplex[n] = xr;
      f[n] = fr;
    } else {
      const bool outside = fr < f[n];
      const SearchPoint xc =
          outside ? affine(centroid, xr, contract) : affine(centroid, simplex[n], contract);
      const double fc = cost(xc, cfg);
      if (fc <= (outside ? fr : f[n])) {
        simplex[n] = xc;
        f[n] = fc;
      } else {
        for (int i = 1; i <= n; ++i) {
          simplex[i] = affine(simplex[0], simplex[i], shrink);
          f[i] = cost(simplex[i], cfg);
        }
      }
    }
    sort_simplex();
    if (f[0] < run.best_cost) {
      run.best_cost = f[0];
      run.best_point = simplex[0];
    }
    run.iterations = iter;
    run.trace.push_back(run.best_cost);
  }
  return run;
}

}  // namespace

std::optional<MachineParams<double>> decode(const SearchPoint& raw) {
  if (!std::all_of(raw.begin(), raw.end(), [](double v) { return std::isfinite(v); })) return std::nullopt;
  Row v0 = unpack_row(raw, 0);
  Row v1 = unpack_row(raw, 8);
  const double n0 = v0.norm();
  if (n0 <= kDegenerateTol) return std::nullopt;
  v0 /= n0;
  // Two passes of projection removal keep the rows orthogonal to rounding.
  for (int pass = 0; pass < 2; ++pass) v1 -= v0.dot(v1) * v0;
  const double n1 = v1.norm();
  if (n1 <= kDegenerateTol) return std::nullopt;
  v1 /= n1;

  MachineParams<double> p;
  p.row0 = v0;
  p.row1 = v1;
  p.sigma = BlankState<double>(std::clamp(std::cos(raw[16]), -1.0, 1.0));
  return p;
}

SearchPoint encode(const MachineParams<double>& p) {
  SearchPoint raw{};
  pack_row(p.row0, raw, 0);
  pack_row(p.row1, raw, 8);
  raw[16] = std::acos(std::clamp(p.sigma.m1p(), -1.0, 1.0));
  return raw;
}

void check_config(const OptConfig& cfg) {
  if (cfg.restarts < 1) throw std::invalid_argument("optimizer: restarts must be at least 1");
  if (cfg.max_iters < 0) throw std::invalid_argument("optimizer: max_iters must be non-negative");
  if (cfg.objective == Objective::weighted) {
    if (!(cfg.weight_fidelity >= 0.0) || !(cfg.weight_distortion >= 0.0))
      throw std::invalid_argument("optimizer: weights must be non-negative");
    if (cfg.weight_fidelity == 0.0 && cfg.weight_distortion == 0.0)
      throw std::invalid_argument("optimizer: weights must not both be zero");
  }
}

double evaluate(const MachineParams<double>& p, const OptConfig& cfg) {
  switch (cfg.objective) {
    case Objective::max_avg_fidelity:
      return avg_fidelity_quadrature(p);
    case Objective::min_avg_distortion:
      require_valid(p);
      return -avg_distortion_quadrature(d1_coefficients(couplings(p)));
    case Objective::weighted:
      require_valid(p);
      return cfg.weight_fidelity * avg_fidelity_quadrature(p) -
             cfg.weight_distortion * avg_distortion_quadrature(d1_coefficients(couplings(p)));
  }
  throw std::logic_error("unknown objective");
}

std::uint64_t restart_seed(std::uint64_t seed, int restart) {
  // Mixing through seed_seq keeps nearby user seeds from sharing restarts.
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::array<std::uint32_t, 2> out;
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

SearchPoint random_search_point(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  for (;;) {
    SearchPoint raw;
    for (int k = 0; k < 16; ++k) raw[k] = normal(gen);
    raw[16] = angle(gen);
    if (decode(raw)) return raw;
  }
}

OptResult optimize(const OptConfig& cfg) {
  check_config(cfg);

  auto run_restart = [&cfg](int r) {
    const SearchPoint start = (r == 0 && cfg.warm_start) ? encode(*cfg.warm_start)
                                                         : random_search_point(restart_seed(cfg.seed, r));
    return nelder_mead(start, cfg);
  };

  std::vector<LocalRun> runs(cfg.restarts);
  if (cfg.parallel && cfg.restarts > 1) {
    std::vector<std::future<LocalRun>> pending;
    pending.reserve(cfg.restarts);
    for (int r = 0; r < cfg.restarts; ++r) pending.push_back(std::async(std::launch::async, run_restart, r));
    for (int r = 0; r < cfg.restarts; ++r) runs[r] = pending[r].get();
  } else {
    for (int r = 0; r < cfg.restarts; ++r) runs[r] = run_restart(r);
  }

  // Merge in restart order; ties keep the earlier restart.
  OptResult result;
  double best_cost = std::numeric_limits<double>::infinity();
  int best_run = -1;
  for (int r = 0; r < cfg.restarts; ++r) {
    const auto& run = runs[r];
    result.iterations_used += run.iterations;
    for (std::size_t it = 0; it < run.trace.size(); ++it) {
      if (run.trace[it] < best_cost) {
        best_cost = run.trace[it];
        best_run = r;
      }
      result.history.push_back({r, static_cast<int>(it), -best_cost});
    }
  }
  if (best_run < 0) throw std::runtime_error("optimizer: no feasible point evaluated");

  result.best_machine = *decode(runs[best_run].best_point);
  result.best_objective = -best_cost;
  result.avg_fidelity = avg_fidelity_quadrature(result.best_machine);
  result.avg_distortion = avg_distortion_quadrature(d1_coefficients(couplings(result.best_machine)));
  return result;
}

}  // namespace qdelete
