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

#include "cohvec/gcv.hpp"

#include <algorithm>
#include <cmath>

#include "cohvec/quantifiers.hpp"

namespace cohvec {

namespace {

// RNG stream of the level-k search
std::uint64_t level_stream(int k) { return 0x5100u + static_cast<std::uint64_t>(k); }

constexpr Real kClassTolerance = 1e-6;

RVector partial_sums_of(const OrderedProbVector<Real>& u) { return lorenz(u).partial_sums; }

}  // namespace

bool GcvResult::all_converged() const {
  return std::all_of(converged.begin(), converged.end(), [](bool c) { return c; });
}

LevelResult s_k_sup(const DensityMatrix& rho, int k, const OptimizerConfig& cfg,
                    std::span<const std::vector<Real>> extra_starts) {
  const Eigen::Index d = rho.dim();
  if (k < 1 || k > d - 1) throw ValidationError("level k must lie in 1..d-1");
  cfg.validate();
  LevelResult out;
  out.k = k;

  const DecompositionMap map(rho, cfg.members_for(d, spectral(rho).rank()));
  if (map.rank() == 1) {
    out.witness = map.ensemble(map.spectral_params());
    out.value = partial_sums_of(decomposition_point(out.witness))[k];
    out.converged = true;
    return out;
  }

  const RowObjective objective = [k](const RMatrix& rows) {
    Real total = 0;
    for (Eigen::Index m = 0; m < rows.rows(); ++m) total += top_k_sum(rows.row(m), k);
    return total;
  };
  const EnsembleSearch search = maximize_over_decompositions(map, objective, cfg, level_stream(k), extra_starts);
  out.witness = map.ensemble(search.params);
  // report the value the witness actually attains
  out.value = std::max(partial_sums_of(decomposition_point(out.witness))[k], Real(k) / Real(d));
  out.converged = search.converged;
  out.dispersion = search.dispersion;
  return out;
}

OrderedProbVector<Real> nu_from_levels(const RVector& levels) {
  const Eigen::Index d = levels.size() + 1;
  RVector sums(d + 1);
  sums[0] = 0;
  sums.segment(1, d - 1) = levels;
  sums[d] = 1;
  return vector_from_partial_sums(std::move(sums));
}

GcvResult gcv(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  cfg.validate();
  const Eigen::Index d = rho.dim();
  GcvResult out;
  if (d == 1) {
    out.nu = basis_vector<Real>(1);
    out.heuristic = false;
    return out;
  }
  const Spectrum spectrum = spectral(rho);
  if (spectrum.rank() == 1) {
    const PureState psi = PureState::normalized(spectrum.vectors.col(0));
    out.nu = sort_desc(coherence_vector(psi));
    out.levels = partial_sums_of(out.nu).segment(1, d - 1);
    out.witnesses.assign(static_cast<std::size_t>(d - 1), PureEnsemble(RVector::Ones(1), {psi}));
    out.converged.assign(static_cast<std::size_t>(d - 1), true);
    out.dispersion.assign(static_cast<std::size_t>(d - 1), 0.0);
    out.heuristic = false;
    return out;
  }

  const DecompositionMap map(rho, cfg.members_for(d, spectrum.rank()));
  std::vector<std::vector<Real>> starts;
  std::vector<OrderedProbVector<Real>> points{decomposition_point(spectral_ensemble(rho))};
  out.levels.resize(d - 1);
  for (int k = 1; k <= d - 1; ++k) {
    LevelResult level = s_k_sup(rho, k, cfg, starts);
    out.levels[k - 1] = level.value;
    points.push_back(decomposition_point(level.witness));
    out.converged.push_back(level.converged);
    out.dispersion.push_back(level.dispersion);
    // witnesses of earlier levels warm-start the later ones
    const PureEnsemble& w = level.witness;
    if (static_cast<Eigen::Index>(w.size()) <= map.ensemble_size()) {
      // V_mj = sqrt(q_m) <e_j|psi_m> / sqrt(lambda_j)
      CMatrix v = CMatrix::Zero(map.ensemble_size(), map.rank());
      for (std::size_t m = 0; m < w.size(); ++m) {
        const CVector coeff = spectrum.vectors.adjoint() * w.states()[m].amplitudes();
        for (Eigen::Index j = 0; j < map.rank(); ++j)
          v(static_cast<Eigen::Index>(m), j) =
              std::sqrt(w.weights()[static_cast<Eigen::Index>(m)]) * coeff[j] / std::sqrt(spectrum.values[j]);
      }
      // zero-weight rows would make the columns dependent; fill them with a
      // small deterministic perturbation before orthonormalizing
      for (Eigen::Index m = static_cast<Eigen::Index>(w.size()); m < v.rows(); ++m)
        for (Eigen::Index j = 0; j < v.cols(); ++j) v(m, j) = Complex(1e-3 * Real(m + 1), 1e-3 * Real(j + 1));
      starts.push_back(map.params_of(orthonormalize(v)));
    }
    out.witnesses.push_back(std::move(level.witness));
  }

  // every known decomposition point bounds every level from below
  for (const auto& p : points) {
    const RVector s = partial_sums_of(p);
    for (Eigen::Index j = 1; j < d; ++j) out.levels[j - 1] = std::max(out.levels[j - 1], s[j]);
  }
  for (Eigen::Index j = 0; j < d - 1; ++j) {
    if (j > 0) out.levels[j] = std::max(out.levels[j], out.levels[j - 1]);
    out.levels[j] = std::clamp(out.levels[j], Real(j + 1) / Real(d), Real(1));
  }
  out.nu = nu_from_levels(out.levels);
  return out;
}

QubitOptimum gcv_qubit(const BlochVector& r) {
  const Real perp = std::sqrt(std::max(Real(0), 1 - r.planar_norm2()));
  RVector nu(2);
  nu << (1 + perp) / 2, (1 - perp) / 2;
  QubitOptimum out{OrderedProbVector<Real>(nu), {}};
  if (perp < 1e-12) {
    // pure state on the equator: the only decomposition is the state itself
    const Real n = std::sqrt(r.planar_norm2());
    out.decomposition = PureEnsemble(RVector::Ones(1), {pure_from_bloch(BlochVector(r.x / n, r.y / n, 0))});
    return out;
  }
  const Real q = std::clamp((r.z + perp) / (2 * perp), Real(0), Real(1));
  RVector w(2);
  w << q, 1 - q;
  // |s|^2 = r_x^2 + r_y^2 + perp^2 = 1 up to round-off
  auto unit = [&](Real z) {
    const Real n = std::sqrt(r.x * r.x + r.y * r.y + z * z);
    return BlochVector(r.x / n, r.y / n, z / n);
  };
  out.decomposition = PureEnsemble(w, {pure_from_bloch(unit(perp)), pure_from_bloch(unit(-perp))});
  return out;
}

OptimalityReport has_optimal_decomposition(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  OptimalityReport out;
  if (rho.dim() == 1) {
    out.verdict = Optimality::Yes;
    return out;
  }
  const QuantifierReport q = quantify(rho, CoherenceFn::shannon(rho.dim()), cfg);
  out.c_top = q.top.value;
  out.c_cv = q.cv.value;
  out.gap = out.c_top - out.c_cv;
  if (std::abs(out.gap) <= kOptimalityTolerance)
    out.verdict = Optimality::Yes;
  else if (out.gap > 10 * kOptimalityTolerance)
    out.verdict = Optimality::No;
  else
    out.verdict = Optimality::Undetermined;
  return out;
}

Classification classify(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  const Eigen::Index d = rho.dim();
  Classification out;
  if (rho.off_diagonal_norm() <= 1e-10) {
    out.direct = StateClass::Incoherent;
  } else if (const auto psi = as_pure(rho)) {
    const RVector mu = coherence_vector(*psi).entries();
    if ((mu.array() - 1.0 / Real(d)).abs().maxCoeff() <= 1e-8) out.direct = StateClass::MaximallyCoherent;
  }

  out.nu = gcv(rho, cfg).nu;
  if (out.nu[0] >= 1 - kClassTolerance)
    out.from_nu = StateClass::Incoherent;
  else if ((out.nu.entries().array() - 1.0 / Real(d)).abs().maxCoeff() <= kClassTolerance)
    out.from_nu = StateClass::MaximallyCoherent;
  out.mismatch = out.direct != out.from_nu;
  return out;
}

const char* to_string(Optimality o) {
  switch (o) {
    case Optimality::Yes: return "yes";
    case Optimality::No: return "no";
    case Optimality::Undetermined: return "undetermined";
  }
  return "?";
}

const char* to_string(StateClass c) {
  switch (c) {
    case StateClass::Incoherent: return "incoherent";
    case StateClass::MaximallyCoherent: return "maximally-coherent";
    case StateClass::Other: return "other";
  }
  return "?";
}

}  // namespace cohvec
