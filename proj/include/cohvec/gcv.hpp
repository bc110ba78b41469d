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

// Generalized coherence vector nu(rho): the majorization-lattice supremum of
// the decomposition points of rho. For d > 2 it is estimated by maximizing
// each Lorenz level S_k separately; every S_k is a lower bound attained by a
// witness ensemble, so the estimate is majorized by the true vector.

#include <vector>

#include "cohvec/search.hpp"

namespace cohvec {

struct LevelResult {
  int k = 0;
  Real value = 0;  // lower bound on S_k
  PureEnsemble witness;
  bool converged = false;
  Real dispersion = 0;
};

struct GcvResult {
  OrderedProbVector<Real> nu;
  RVector levels;  // S_1..S_{d-1} after monotone repair
  std::vector<PureEnsemble> witnesses;
  std::vector<bool> converged;
  std::vector<Real> dispersion;
  /// false only when nu came from a closed form or a trivial case
  bool heuristic = true;

  bool all_converged() const;
};

/// Lower bound on sup over decompositions of sum_m q_m (sum of the k largest
/// entries of mu(psi_m)), with the ensemble attaining it.
LevelResult s_k_sup(const DensityMatrix& rho, int k, const OptimizerConfig& cfg,
                    std::span<const std::vector<Real>> extra_starts = {});

GcvResult gcv(const DensityMatrix& rho, const OptimizerConfig& cfg);

/// nu from S_1..S_{d-1} (S_0 = 0, S_d = 1 implied) via the concave envelope.
OrderedProbVector<Real> nu_from_levels(const RVector& levels);

struct QubitOptimum {
  OrderedProbVector<Real> nu;
  PureEnsemble decomposition;
};

/// nu = ((1 + r)/2, (1 - r)/2), r = sqrt(1 - r_x^2 - r_y^2), with the optimal
/// two-member decomposition on Bloch vectors (r_x, r_y, +-r).
QubitOptimum gcv_qubit(const BlochVector& r);

enum class Optimality { Yes, No, Undetermined };

struct OptimalityReport {
  Optimality verdict = Optimality::Undetermined;
  Real gap = 0;    // c_top - c_cv for the normalized Shannon entropy
  Real c_top = 0;
  Real c_cv = 0;
};

inline constexpr Real kOptimalityTolerance = 1e-4;

/// Decides whether nu(rho) is attained by some decomposition by comparing
/// c_top and c_cv of a strictly Schur-concave function.
OptimalityReport has_optimal_decomposition(const DensityMatrix& rho, const OptimizerConfig& cfg);

enum class StateClass { Incoherent, MaximallyCoherent, Other };

struct Classification {
  StateClass direct = StateClass::Other;   // from the matrix entries
  StateClass from_nu = StateClass::Other;  // from the estimated nu
  bool mismatch = false;
  OrderedProbVector<Real> nu;
};

Classification classify(const DensityMatrix& rho, const OptimizerConfig& cfg);

const char* to_string(Optimality o);
const char* to_string(StateClass c);

}  // namespace cohvec
