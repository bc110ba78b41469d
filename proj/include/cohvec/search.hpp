// Copyright 2026 The cohvec Authors
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

#pragma once

// Multi-start derivative-free maximization over the pure-state
// decompositions of a fixed state. The search runs on unconstrained
// isometry parameters (see DecompositionMap); each restart owns a private
// RNG stream so results do not depend on execution order.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cohvec/ensemble.hpp"

namespace cohvec {

struct OptimizerConfig {
  explicit OptimizerConfig(std::uint64_t master_seed) : seed(master_seed) {}

  int restarts = 32;
  int max_iters = 400;       // sweeps per restart
  Real tolerance = 1e-7;     // objective tolerance
  std::optional<Eigen::Index> ensemble_size;  // default d^2
  std::uint64_t seed;
  bool parallel = false;

  /// max(rank, ensemble_size or d^2)
  Eigen::Index members_for(Eigen::Index dim, Eigen::Index rank) const;
  void validate() const;
};

/// splitmix64-style combination, used to derive per-restart seeds.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

struct SearchResult {
  std::vector<Real> x;
  Real value = 0;
  int iterations = 0;
  bool converged = false;  // step size fell below the floor before max_iters
};

/// Adaptive coordinate pattern search (maximization). Each coordinate keeps
/// its own step: doubled after a successful move, halved after failing in
/// both directions. Stops when every step is below step_floor, when a sweep
/// gains less than tol while steps are already small, or after max_iters
/// sweeps.
SearchResult pattern_search(const std::function<Real(std::span<const Real>)>& objective,
                            std::vector<Real> x0, Real initial_step, int max_iters, Real tol);

/// Objective on the weighted coherence rows of an ensemble (see
/// DecompositionMap::weighted_rows).
using RowObjective = std::function<Real(const RMatrix& rows)>;

struct EnsembleSearch {
  Real value = 0;
  std::vector<Real> params;
  bool converged = false;
  /// best minus median restart value; large spreads flag a rugged landscape
  Real dispersion = 0;
  std::vector<Real> restart_values;
};

/// Maximizes the objective over M-member decompositions. Restart 0 starts
/// from the eigen-ensemble, subsequent ones from the given extra starts and
/// then from random parameters. `stream` separates RNG streams of
/// independent searches that share a master seed.
EnsembleSearch maximize_over_decompositions(const DecompositionMap& map, const RowObjective& objective,
                                            const OptimizerConfig& cfg, std::uint64_t stream,
                                            std::span<const std::vector<Real>> extra_starts = {});

}  // namespace cohvec
