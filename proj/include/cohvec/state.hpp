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

// Density operators and pure states on C^d. The incoherent basis is always
// the computational basis.

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cohvec/majorization.hpp"

namespace cohvec {

using Real = double;
using Complex = std::complex<Real>;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Eigenvalues at or below this are treated as zero; defines numerical rank.
inline constexpr Real kRankCutoff = 1e-12;
inline constexpr Real kStateTolerance = 1e-9;

/// Largest |a_ij| of a matrix expression.
template <typename Derived>
Real max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? Real(0) : Real(m.cwiseAbs().maxCoeff());
}

class PureState {
 public:
  PureState() = default;
  /// Validates that the vector has unit norm (to 1e-9).
  explicit PureState(CVector amplitudes);
  /// Rescales a non-zero vector to unit norm.
  static PureState normalized(const CVector& v);
  static PureState basis(Eigen::Index d, Eigen::Index i);

  const CVector& amplitudes() const noexcept { return amplitudes_; }
  Eigen::Index dim() const noexcept { return amplitudes_.size(); }
  CMatrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  CVector amplitudes_;
};

/// Hermitian, positive semidefinite, unit-trace d x d matrix.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(CMatrix matrix);
  explicit DensityMatrix(const PureState& psi) : DensityMatrix(psi.projector()) {}

  const CMatrix& matrix() const noexcept { return matrix_; }
  Eigen::Index dim() const noexcept { return matrix_.rows(); }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return matrix_(i, j); }

  /// Largest modulus of an off-diagonal entry.
  Real off_diagonal_norm() const;

 private:
  CMatrix matrix_;
};

struct BlochVector {
  Real x = 0, y = 0, z = 0;

  BlochVector() = default;
  BlochVector(Real rx, Real ry, Real rz);
  Real norm() const;
  /// x^2 + y^2, the squared length of the in-plane part.
  Real planar_norm2() const { return x * x + y * y; }
};

/// Eigen-decomposition truncated to the numerical support.
struct Spectrum {
  RVector values;   // non-increasing, all > kRankCutoff
  CMatrix vectors;  // d x rank, orthonormal columns

  Eigen::Index rank() const noexcept { return values.size(); }
  Eigen::Index dim() const noexcept { return vectors.rows(); }
};

/// (|<0|psi>|^2, ..., |<d-1|psi>|^2).
ProbVector<Real> coherence_vector(const PureState& psi);

/// Diagonal of a density matrix as a probability vector.
ProbVector<Real> diagonal(const DensityMatrix& rho);

Spectrum spectral(const DensityMatrix& rho);

/// Returns the state vector when rho has numerical rank one.
std::optional<PureState> as_pure(const DensityMatrix& rho, Real tol = kStateTolerance);

namespace presets {
PureState mcs_vector(Eigen::Index d);
DensityMatrix mcs(Eigen::Index d);
/// p I/d + (1 - p) |mcs><mcs|
DensityMatrix depolarized_mcs(Eigen::Index d, Real p);
DensityMatrix bloch(const BlochVector& r);
DensityMatrix diag(const ProbVector<Real>& p);
}  // namespace presets

/// Named preset: "mcs" {d}, "depolarized-mcs" {d, p}, "bloch" {x, y, z},
/// "diag" {p_0, ..., p_{d-1}}.
DensityMatrix preset(const std::string& name, const std::vector<Real>& params);

BlochVector bloch_of(const DensityMatrix& rho);
/// Pure qubit state with the given unit Bloch vector.
PureState pure_from_bloch(const BlochVector& s);

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
/// of diag(R) absorbed into Q.
CMatrix haar_unitary(Eigen::Index n, std::mt19937_64& rng);
CMatrix haar_unitary(Eigen::Index n, std::uint64_t seed);

/// G G^dagger / tr(G G^dagger) with G a d x rank Ginibre matrix.
DensityMatrix random_density(Eigen::Index d, Eigen::Index rank, std::uint64_t seed);

/// Matrix of i.i.d. standard complex Gaussians (E|z|^2 = 1).
CMatrix ginibre(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng);

}  // namespace cohvec
