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
 * @file optimizer.hpp
 * Derivative-free search over valid machines.
 *
 * A search point is 17 unconstrained reals: two complex 4-vectors stored as
 * interleaved (re, im) pairs, and an angle theta with m1p = cos(theta).
 * decode() orthonormalizes the two vectors by Gram-Schmidt, so every point
 * the search visits is a valid machine and no penalty terms are needed.
 * Each restart runs Nelder-Mead from a seeded random point.
 */

#include "qdelete/machine.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace qdelete {

inline constexpr int kSearchDim = 17;
using SearchPoint = std::array<double, kSearchDim>;

/// Returns std::nullopt for degenerate points (zero first vector, or second
/// vector within 1e-12 of the span of the first).
std::optional<MachineParams<double>> decode(const SearchPoint& raw);

/// Inverse of decode for an already valid machine: decode(encode(p)) == p.
SearchPoint encode(const MachineParams<double>& p);

enum class Objective { max_avg_fidelity, min_avg_distortion, weighted };

struct OptConfig {
  Objective objective = Objective::max_avg_fidelity;
  double weight_fidelity = 1.0;
  double weight_distortion = 1.0;
  int restarts = 16;
  int max_iters = 800;
  std::uint64_t seed = 0;
  /// Simplex convergence threshold on the spread of objective values.
  double tol = 1e-12;
  /// Replaces the random start of restart 0 when set.
  std::optional<MachineParams<double>> warm_start;
  /// Run restarts on separate threads; results do not depend on this.
  bool parallel = true;
};

/// Throws std::invalid_argument for restarts < 1, max_iters < 0, negative
/// weights or both weights zero.
void check_config(const OptConfig& cfg);

/// Objective to maximize: F, -D or wF F - wD D, with F and D the quadrature averages.
double evaluate(const MachineParams<double>& p, const OptConfig& cfg);

struct HistoryEntry {
  int restart = 0;
  int iteration = 0;
  /// Best objective seen so far over all restarts processed up to this point.
  double objective = 0.0;
};

struct OptResult {
  MachineParams<double> best_machine;
  double best_objective = 0.0;
  double avg_fidelity = 0.0;
  double avg_distortion = 0.0;
  int iterations_used = 0;
  std::vector<HistoryEntry> history;
};

OptResult optimize(const OptConfig& cfg);

/// Seed for restart r; distinct (seed, restart) pairs give unrelated streams.
std::uint64_t restart_seed(std::uint64_t seed, int restart);

/// Draws a non-degenerate search point from the generator seeded with seed.
SearchPoint random_search_point(std::uint64_t seed);

}  // namespace qdelete
