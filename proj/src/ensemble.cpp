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

#include "cohvec/ensemble.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>

namespace cohvec {

Isometry::Isometry(CMatrix v, Real tol) : v_(std::move(v)) {
  if (v_.cols() == 0 || v_.rows() < v_.cols())
    throw DimensionError("isometry needs rows >= cols >= 1");
  const CMatrix gram = v_.adjoint() * v_;
  if (max_abs(gram - CMatrix::Identity(v_.cols(), v_.cols())) > tol)
    throw ValidationError("matrix columns are not orthonormal");
}

Isometry Isometry::identity(Eigen::Index rows, Eigen::Index cols) {
  return Isometry(CMatrix::Identity(rows, cols));
}

PureEnsemble::PureEnsemble(const RVector& weights, const std::vector<PureState>& states) {
  if (static_cast<std::size_t>(weights.size()) != states.size())
    throw DimensionError("one weight per member required");
  if (states.empty()) throw ValidationError("ensemble must have at least one member");
  const Eigen::Index d = states.front().dim();
  std::vector<Real> kept_w;
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (states[k].dim() != d) throw DimensionError("ensemble members differ in dimension");
    const Real w = weights[static_cast<Eigen::Index>(k)];
    if (w < -kClampTolerance || !std::isfinite(w)) throw ValidationError("invalid ensemble weight");
    if (w < kWeightCutoff) continue;
    kept_w.push_back(w);
    states_.push_back(states[k]);
  }
  if (states_.empty()) throw ValidationError("every ensemble weight is below the cutoff");
  weights_ = Eigen::Map<const RVector>(kept_w.data(), static_cast<Eigen::Index>(kept_w.size()));
  if (std::abs(weights_.sum() - 1) > kSumTolerance)
    throw ValidationError("ensemble weights sum to " + std::to_string(weights_.sum()));
}

CMatrix PureEnsemble::reconstruct() const {
  const Eigen::Index d = dim();
  CMatrix m = CMatrix::Zero(d, d);
  for (std::size_t k = 0; k < states_.size(); ++k) {
    const CVector& a = states_[k].amplitudes();
    m.noalias() += weights_[static_cast<Eigen::Index>(k)] * (a * a.adjoint());
  }
  return m;
}

namespace {

CMatrix amplitude_matrix(const Spectrum& s) {
  // row j = sqrt(lambda_j) * e_j^T
  return s.values.cwiseSqrt().asDiagonal() * s.vectors.transpose();
}

}  // namespace

PureEnsemble ensemble_from_isometry(const Spectrum& spectrum, const Isometry& v) {
  if (v.cols() != spectrum.rank())
    throw DimensionError("isometry has " + std::to_string(v.cols()) + " columns, state rank is " +
                         std::to_string(spectrum.rank()));
  const CMatrix w = v.matrix() * amplitude_matrix(spectrum);  // M x d, row k = sqrt(q_k) psi_k^T
  RVector q(w.rows());
  std::vector<PureState> members;
  members.reserve(static_cast<std::size_t>(w.rows()));
  for (Eigen::Index k = 0; k < w.rows(); ++k) {
    q[k] = w.row(k).squaredNorm();
    if (q[k] < kWeightCutoff) {
      members.push_back(PureState::basis(w.cols(), 0));  // pruned by the ensemble constructor
      continue;
    }
    members.push_back(PureState::normalized(w.row(k).transpose()));
  }
  q /= q.sum();
  return PureEnsemble(q, members);
}

PureEnsemble ensemble_from_isometry(const DensityMatrix& rho, const Isometry& v) {
  return ensemble_from_isometry(spectral(rho), v);
}

PureEnsemble spectral_ensemble(const DensityMatrix& rho) {
  const Spectrum s = spectral(rho);
  return ensemble_from_isometry(s, Isometry::identity(s.rank(), s.rank()));
}

bool validate_ensemble(const PureEnsemble& ens, const DensityMatrix& rho, Real tol) {
  if (ens.dim() != rho.dim()) throw DimensionError("ensemble and state differ in dimension");
  return max_abs(ens.reconstruct() - rho.matrix()) <= tol;
}

OrderedProbVector<Real> decomposition_point(const PureEnsemble& ens) {
  std::vector<OrderedProbVector<Real>> sorted;
  sorted.reserve(ens.size());
  for (const auto& psi : ens.states()) sorted.push_back(sort_desc(coherence_vector(psi)));
  return convex_combine(ProbVector<Real>(ens.weights()), sorted);
}

Isometry random_isometry(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  if (cols < 1 || rows < cols) throw DimensionError("random_isometry needs rows >= cols >= 1");
  return Isometry(haar_unitary(rows, seed).leftCols(cols), 1e-10);
}

PureEnsemble mix_ensembles(const PureEnsemble& a, const PureEnsemble& b, Real t) {
  if (!(t >= 0 && t <= 1)) throw ValidationError("mixing parameter must lie in [0, 1]");
  if (a.dim() != b.dim()) throw DimensionError("ensembles differ in dimension");
  if (max_abs(a.reconstruct() - b.reconstruct()) > kReconstructionTolerance)
    throw ValidationError("ensembles decompose different states");
  RVector w(a.weights().size() + b.weights().size());
  w << t * a.weights(), (1 - t) * b.weights();
  std::vector<PureState> members = a.states();
  members.insert(members.end(), b.states().begin(), b.states().end());
  return PureEnsemble(w, members);
}

CMatrix orthonormalize(const CMatrix& x) {
  CMatrix q = x;
  bool degenerate = false;
  for (Eigen::Index j = 0; j < q.cols() && !degenerate; ++j) {
    const Real scale = x.col(j).norm();
    // two Gram-Schmidt passes keep orthogonality at working precision
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index i = 0; i < j; ++i) {
        const Complex c = q.col(i).dot(q.col(j));
        q.col(j) -= c * q.col(i);
      }
    const Real n = q.col(j).norm();
    if (!(n > 1e-8 * std::max(scale, Real(1e-300)))) {
      degenerate = true;
      break;
    }
    q.col(j) /= n;
  }
  if (!degenerate) return q;
  Eigen::HouseholderQR<CMatrix> qr(x);
  return qr.householderQ() * CMatrix::Identity(x.rows(), x.cols());
}

DecompositionMap::DecompositionMap(const DensityMatrix& rho, Eigen::Index ensemble_size)
    : spectrum_(spectral(rho)), members_(ensemble_size) {
  amplitudes_ = amplitude_matrix(spectrum_);
  if (members_ < spectrum_.rank())
    throw ValidationError("ensemble size " + std::to_string(members_) + " is below the state rank " +
                          std::to_string(spectrum_.rank()));
}

CMatrix DecompositionMap::raw_matrix(std::span<const Real> params) const {
  const Eigen::Index m = members_, r = rank();
  if (static_cast<Eigen::Index>(params.size()) != 2 * m * r)
    throw DimensionError("parameter vector has the wrong length");
  CMatrix x(m, r);
  for (Eigen::Index j = 0; j < r; ++j)
    for (Eigen::Index k = 0; k < m; ++k) {
      const std::size_t idx = static_cast<std::size_t>(j * m + k);
      x(k, j) = Complex(params[idx], params[idx + static_cast<std::size_t>(m * r)]);
    }
  return x;
}

Isometry DecompositionMap::isometry(std::span<const Real> params) const {
  return Isometry(orthonormalize(raw_matrix(params)));
}

std::vector<Real> DecompositionMap::params_of(const CMatrix& v) const {
  const Eigen::Index m = members_, r = rank();
  if (v.rows() != m || v.cols() != r) throw DimensionError("matrix shape does not match the map");
  std::vector<Real> p(static_cast<std::size_t>(2 * m * r));
  for (Eigen::Index j = 0; j < r; ++j)
    for (Eigen::Index k = 0; k < m; ++k) {
      const std::size_t idx = static_cast<std::size_t>(j * m + k);
      p[idx] = v(k, j).real();
      p[idx + static_cast<std::size_t>(m * r)] = v(k, j).imag();
    }
  return p;
}

std::vector<Real> DecompositionMap::spectral_params() const {
  return params_of(CMatrix::Identity(members_, rank()));
}

void DecompositionMap::weighted_rows(const CMatrix& v, RMatrix& rows) const {
  rows = (v * amplitudes_).cwiseAbs2();
}

void DecompositionMap::weighted_rows(std::span<const Real> params, RMatrix& rows) const {
  weighted_rows(orthonormalize(raw_matrix(params)), rows);
}

PureEnsemble DecompositionMap::ensemble(std::span<const Real> params) const {
  return ensemble_from_isometry(spectrum_, isometry(params));
}

RVector sorted_row_sum(const RMatrix& rows) {
  const Eigen::Index d = rows.cols();
  RVector acc = RVector::Zero(d);
  Real buf[64];
  std::vector<Real> heap;
  Real* row = buf;
  if (d > 64) {
    heap.resize(static_cast<std::size_t>(d));
    row = heap.data();
  }
  for (Eigen::Index k = 0; k < rows.rows(); ++k) {
    for (Eigen::Index i = 0; i < d; ++i) row[i] = rows(k, i);
    std::sort(row, row + d, std::greater<Real>());
    for (Eigen::Index i = 0; i < d; ++i) acc[i] += row[i];
  }
  return acc;
}

}  // namespace cohvec
