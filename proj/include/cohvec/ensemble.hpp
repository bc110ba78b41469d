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

// Pure-state decompositions of a density matrix. Every decomposition with M
// members is obtained from an M x r isometry V acting on the spectral
// decomposition:  sqrt(q_k) |psi_k> = sum_j sqrt(lambda_j) V_kj |e_j>.

#include <cstdint>
#include <span>
#include <vector>

#include "cohvec/state.hpp"

namespace cohvec {

/// Members with weight below this are dropped.
inline constexpr Real kWeightCutoff = 1e-12;
inline constexpr Real kReconstructionTolerance = 1e-8;

/// M x r complex matrix with orthonormal columns.
class Isometry {
 public:
  Isometry() = default;
  explicit Isometry(CMatrix v, Real tol = kStateTolerance);
  static Isometry identity(Eigen::Index rows, Eigen::Index cols);

  const CMatrix& matrix() const noexcept { return v_; }
  Eigen::Index rows() const noexcept { return v_.rows(); }
  Eigen::Index cols() const noexcept { return v_.cols(); }

 private:
  CMatrix v_;
};

class PureEnsemble {
 public:
  PureEnsemble() = default;
  /// Weights must sum to one; members below kWeightCutoff are pruned.
  PureEnsemble(const RVector& weights, const std::vector<PureState>& states);

  const RVector& weights() const noexcept { return weights_; }
  const std::vector<PureState>& states() const noexcept { return states_; }
  std::size_t size() const noexcept { return states_.size(); }
  Eigen::Index dim() const { return states_.empty() ? 0 : states_.front().dim(); }

  /// sum_k q_k |psi_k><psi_k|
  CMatrix reconstruct() const;

 private:
  RVector weights_;
  std::vector<PureState> states_;
};

PureEnsemble ensemble_from_isometry(const Spectrum& spectrum, const Isometry& v);
PureEnsemble ensemble_from_isometry(const DensityMatrix& rho, const Isometry& v);

/// The eigen-ensemble {lambda_j, |e_j>}.
PureEnsemble spectral_ensemble(const DensityMatrix& rho);

bool validate_ensemble(const PureEnsemble& ens, const DensityMatrix& rho,
                       Real tol = kReconstructionTolerance);

/// sum_k q_k mu_down(psi_k)
OrderedProbVector<Real> decomposition_point(const PureEnsemble& ens);

/// First r columns of a Haar unitary of size M.
Isometry random_isometry(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed);

/// t a + (1 - t) b as a single ensemble of the same state.
PureEnsemble mix_ensembles(const PureEnsemble& a, const PureEnsemble& b, Real t);

/// Orthonormalizes the columns of x (thin QR). Modified Gram-Schmidt with a
/// Householder fallback when a column is numerically dependent.
CMatrix orthonormalize(const CMatrix& x);

/// Unconstrained real parametrization of the M-member decompositions of a
/// fixed state, used by the ensemble optimizers. A parameter vector holds the
/// real and imaginary parts of an M x r complex matrix; its orthonormalized
/// columns form the isometry.
class DecompositionMap {
 public:
  DecompositionMap(const DensityMatrix& rho, Eigen::Index ensemble_size);

  Eigen::Index dim() const noexcept { return amplitudes_.cols(); }
  Eigen::Index rank() const noexcept { return amplitudes_.rows(); }
  Eigen::Index ensemble_size() const noexcept { return members_; }
  Eigen::Index num_params() const noexcept { return 2 * members_ * rank(); }
  const Spectrum& spectrum() const noexcept { return spectrum_; }

  CMatrix raw_matrix(std::span<const Real> params) const;
  Isometry isometry(std::span<const Real> params) const;
  std::vector<Real> params_of(const CMatrix& v) const;
  /// Parameters of the eigen-ensemble padded with zero-weight members.
  std::vector<Real> spectral_params() const;

  /// rows(k, i) = q_k |<i|psi_k>|^2, an M x d matrix whose row sums are the
  /// weights.
  void weighted_rows(std::span<const Real> params, RMatrix& rows) const;
  void weighted_rows(const CMatrix& v, RMatrix& rows) const;

  PureEnsemble ensemble(std::span<const Real> params) const;

 private:
  Spectrum spectrum_;
  CMatrix amplitudes_;  // r x d, row j = sqrt(lambda_j) e_j^T
  Eigen::Index members_;
};

/// Sum over rows of the rows sorted non-increasingly: the decomposition point
/// of the ensemble those rows describe.
RVector sorted_row_sum(const RMatrix& rows);

}  // namespace cohvec
