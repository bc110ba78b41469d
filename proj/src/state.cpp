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

#include "cohvec/state.hpp"

#include <cmath>
#include <optional>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace cohvec {

PureState::PureState(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw DimensionError("pure state must have dimension >= 1");
  if (!amplitudes_.allFinite()) throw ValidationError("pure state has non-finite amplitudes");
  const Real norm = amplitudes_.norm();
  if (std::abs(norm - 1) > kStateTolerance)
    throw ValidationError("pure state norm is " + std::to_string(norm));
}

PureState PureState::normalized(const CVector& v) {
  const Real norm = v.norm();
  if (!(norm > 0)) throw ValidationError("cannot normalize a zero vector");
  return PureState(v / norm);
}

PureState PureState::basis(Eigen::Index d, Eigen::Index i) {
  CVector e = CVector::Zero(d);
  e[i] = 1;
  return PureState(std::move(e));
}

DensityMatrix::DensityMatrix(CMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols())
    throw DimensionError("density matrix must be square and non-empty");
  if (!matrix_.allFinite()) throw ValidationError("density matrix has non-finite entries");
  if (max_abs(matrix_ - matrix_.adjoint()) > kStateTolerance)
    throw ValidationError("density matrix is not Hermitian");
  const Complex tr = matrix_.trace();
  if (std::abs(tr.real() - 1) > kStateTolerance || std::abs(tr.imag()) > kStateTolerance)
    throw ValidationError("density matrix trace is " + std::to_string(tr.real()));
  // symmetrize away the last bits of round-off
  matrix_ = (0.5 * (matrix_ + matrix_.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("eigensolver failed");
  if (solver.eigenvalues().minCoeff() < -kStateTolerance)
    throw ValidationError("density matrix is not positive semidefinite (min eigenvalue " +
                          std::to_string(solver.eigenvalues().minCoeff()) + ")");
}

Real DensityMatrix::off_diagonal_norm() const {
  Real worst = 0;
  for (Eigen::Index j = 0; j < dim(); ++j)
    for (Eigen::Index i = 0; i < dim(); ++i)
      if (i != j) worst = std::max(worst, std::abs(matrix_(i, j)));
  return worst;
}

BlochVector::BlochVector(Real rx, Real ry, Real rz) : x(rx), y(ry), z(rz) {
  if (!std::isfinite(rx) || !std::isfinite(ry) || !std::isfinite(rz))
    throw ValidationError("Bloch vector has non-finite components");
  if (rx * rx + ry * ry + rz * rz > 1 + kStateTolerance)
    throw ValidationError("Bloch vector lies outside the unit ball");
}

Real BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

ProbVector<Real> coherence_vector(const PureState& psi) {
  RVector p = psi.amplitudes().cwiseAbs2();
  p /= p.sum();
  return ProbVector<Real>(std::move(p));
}

ProbVector<Real> diagonal(const DensityMatrix& rho) {
  RVector p = rho.matrix().diagonal().real();
  p /= p.sum();
  return ProbVector<Real>(p.cwiseMax(0.0));
}

Spectrum spectral(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho.matrix());
  if (solver.info() != Eigen::Success) throw NumericError("eigensolver failed");
  const Eigen::Index d = rho.dim();
  // Eigen returns ascending order
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < d; ++i)
    if (solver.eigenvalues()[i] > kRankCutoff) ++rank;
  if (rank == 0) throw NumericError("density matrix has no eigenvalue above the rank cutoff");
  Spectrum s;
  s.values.resize(rank);
  s.vectors.resize(d, rank);
  for (Eigen::Index j = 0; j < rank; ++j) {
    const Eigen::Index src = d - 1 - j;
    s.values[j] = solver.eigenvalues()[src];
    s.vectors.col(j) = solver.eigenvectors().col(src);
  }
  return s;
}

std::optional<PureState> as_pure(const DensityMatrix& rho, Real tol) {
  const Spectrum s = spectral(rho);
  if (s.values[0] < 1 - tol) return std::nullopt;
  return PureState::normalized(s.vectors.col(0));
}

namespace presets {

PureState mcs_vector(Eigen::Index d) {
  if (d < 1) throw ValidationError("dimension must be >= 1");
  return PureState(CVector::Constant(d, Complex(1.0 / std::sqrt(Real(d)), 0)));
}

DensityMatrix mcs(Eigen::Index d) { return DensityMatrix(mcs_vector(d)); }

DensityMatrix depolarized_mcs(Eigen::Index d, Real p) {
  if (!(p >= 0 && p <= 1)) throw ValidationError("depolarizing probability must lie in [0, 1]");
  const CMatrix m = p * CMatrix::Identity(d, d) / Real(d) + (1 - p) * mcs_vector(d).projector();
  return DensityMatrix(m);
}

DensityMatrix bloch(const BlochVector& r) {
  CMatrix m(2, 2);
  m << Complex(1 + r.z, 0), Complex(r.x, -r.y), Complex(r.x, r.y), Complex(1 - r.z, 0);
  return DensityMatrix(0.5 * m);
}

DensityMatrix diag(const ProbVector<Real>& p) {
  return DensityMatrix(p.entries().cast<Complex>().asDiagonal().toDenseMatrix());
}

}  // namespace presets

DensityMatrix preset(const std::string& name, const std::vector<Real>& params) {
  auto need = [&](std::size_t n) {
    if (params.size() != n)
      throw ValidationError("preset '" + name + "' takes " + std::to_string(n) + " parameter(s)");
  };
  auto dimension = [](Real v) {
    if (!(v >= 1) || v != std::floor(v) || v > 64) throw ValidationError("invalid dimension");
    return static_cast<Eigen::Index>(v);
  };
  if (name == "mcs") {
    need(1);
    return presets::mcs(dimension(params[0]));
  }
  if (name == "depolarized-mcs") {
    need(2);
    return presets::depolarized_mcs(dimension(params[0]), params[1]);
  }
  if (name == "bloch") {
    need(3);
    return presets::bloch(BlochVector(params[0], params[1], params[2]));
  }
  if (name == "diag") {
    if (params.empty()) throw ValidationError("preset 'diag' needs at least one probability");
    return presets::diag(ProbVector<Real>(Eigen::Map<const RVector>(params.data(), static_cast<Eigen::Index>(params.size()))));
  }
  throw ValidationError("unknown preset '" + name + "'");
}

BlochVector bloch_of(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw DimensionError("Bloch vector is defined for qubits only");
  const CMatrix& m = rho.matrix();
  // clamp round-off that would push the vector outside the ball
  Real x = 2 * m(1, 0).real(), y = 2 * m(1, 0).imag(), z = (m(0, 0) - m(1, 1)).real();
  const Real n = std::sqrt(x * x + y * y + z * z);
  if (n > 1) x /= n, y /= n, z /= n;
  return BlochVector(x, y, z);
}

PureState pure_from_bloch(const BlochVector& s) {
  CVector a(2);
  if (1 + s.z > 1e-14) {
    const Real c = std::sqrt((1 + s.z) / 2);
    a << Complex(c, 0), Complex(s.x, s.y) / (2 * c);
  } else {
    a << Complex(0, 0), Complex(1, 0);
  }
  return PureState::normalized(a);
}

CMatrix ginibre(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<Real> normal(0.0, std::sqrt(0.5));
  CMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const Real re = normal(rng);
      const Real im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

CMatrix haar_unitary(Eigen::Index n, std::mt19937_64& rng) {
  if (n < 1) throw ValidationError("unitary dimension must be >= 1");
  const CMatrix z = ginibre(n, n, rng);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex rjj = r(j, j);
    const Real mod = std::abs(rjj);
    q.col(j) *= mod > 0 ? rjj / mod : Complex(1, 0);
  }
  return q;
}

CMatrix haar_unitary(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return haar_unitary(n, rng);
}

DensityMatrix random_density(Eigen::Index d, Eigen::Index rank, std::uint64_t seed) {
  if (d < 1 || rank < 1 || rank > d) throw ValidationError("random_density needs 1 <= rank <= d");
  std::mt19937_64 rng(seed);
  const CMatrix g = ginibre(d, rank, rng);
  CMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix(m);
}

}  // namespace cohvec
