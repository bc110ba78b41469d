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

#include "cohvec/channel.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace cohvec {

IncoherentKraus::IncoherentKraus(CMatrix k) : k_(std::move(k)) {
  if (k_.rows() == 0 || k_.rows() != k_.cols()) throw DimensionError("Kraus operator must be square");
  if (!k_.allFinite()) throw ValidationError("Kraus operator has non-finite entries");
  relabel_.assign(static_cast<std::size_t>(k_.cols()), 0);
  for (Eigen::Index i = 0; i < k_.cols(); ++i) {
    int nonzero = 0;
    for (Eigen::Index j = 0; j < k_.rows(); ++j) {
      if (std::abs(k_(j, i)) > kKrausZero) {
        relabel_[static_cast<std::size_t>(i)] = j;
        ++nonzero;
      } else {
        k_(j, i) = 0;
      }
    }
    if (nonzero > 1)
      throw ValidationError("Kraus operator column " + std::to_string(i) +
                            " has several nonzero rows; the operator is not incoherent");
  }
}

IncoherentChannel::IncoherentChannel(std::vector<IncoherentKraus> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw ValidationError("channel needs at least one Kraus operator");
  const Eigen::Index d = kraus_.front().dim();
  CMatrix sum = CMatrix::Zero(d, d);
  for (const auto& k : kraus_) {
    if (k.dim() != d) throw DimensionError("Kraus operators differ in dimension");
    sum.noalias() += k.matrix().adjoint() * k.matrix();
  }
  if (max_abs(sum - CMatrix::Identity(d, d)) > kCompletenessTolerance)
    throw ValidationError("Kraus operators violate completeness (sum K^dagger K != I)");
}

IncoherentChannel build_channel(const std::vector<CMatrix>& kraus) {
  std::vector<IncoherentKraus> ops;
  ops.reserve(kraus.size());
  for (const auto& k : kraus) ops.emplace_back(k);
  return IncoherentChannel(std::move(ops));
}

namespace {

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

DensityMatrix apply(const IncoherentChannel& ch, const DensityMatrix& rho) {
  if (ch.dim() != rho.dim()) throw DimensionError("channel and state differ in dimension");
  const Eigen::Index d = rho.dim();
  CMatrix out = CMatrix::Zero(d, d);
  for (const auto& k : ch.kraus()) out.noalias() += k.matrix() * rho.matrix() * k.matrix().adjoint();
  out = hermitian_part(out);
  out /= out.trace().real();
  return DensityMatrix(out);
}

std::vector<Outcome> selective_apply(const IncoherentChannel& ch, const DensityMatrix& rho) {
  if (ch.dim() != rho.dim()) throw DimensionError("channel and state differ in dimension");
  std::vector<Outcome> outcomes;
  for (const auto& k : ch.kraus()) {
    CMatrix branch = hermitian_part(k.matrix() * rho.matrix() * k.matrix().adjoint());
    const Real p = branch.trace().real();
    if (p <= kBranchCutoff) continue;
    outcomes.push_back({p, DensityMatrix(branch / p)});
  }
  return outcomes;
}

std::vector<std::pair<Real, PureState>> selective_apply(const IncoherentChannel& ch, const PureState& psi) {
  if (ch.dim() != psi.dim()) throw DimensionError("channel and state differ in dimension");
  std::vector<std::pair<Real, PureState>> images;
  for (const auto& k : ch.kraus()) {
    const CVector phi = k.matrix() * psi.amplitudes();
    const Real p = phi.squaredNorm();
    if (p <= kBranchCutoff) continue;
    images.emplace_back(p, PureState::normalized(phi));
  }
  return images;
}

IncoherentChannel random_incoherent_channel(Eigen::Index d, Eigen::Index n, std::uint64_t seed) {
  if (d < 1 || n < 1) throw ValidationError("random channel needs d >= 1 and N >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Eigen::Index> pick(0, d - 1);

  // shared relabeling g with every fibre no larger than n
  std::vector<Eigen::Index> g(static_cast<std::size_t>(d));
  for (;;) {
    std::vector<Eigen::Index> fibre(static_cast<std::size_t>(d), 0);
    bool ok = true;
    for (auto& gi : g) {
      gi = pick(rng);
      if (++fibre[static_cast<std::size_t>(gi)] > n) ok = false;
    }
    if (ok) break;
  }

  std::vector<CMatrix> kraus(static_cast<std::size_t>(n), CMatrix::Zero(d, d));
  std::vector<std::vector<Eigen::Index>> perms(static_cast<std::size_t>(n));
  for (auto& pi : perms) {
    pi.resize(static_cast<std::size_t>(d));
    std::iota(pi.begin(), pi.end(), Eigen::Index{0});
    std::shuffle(pi.begin(), pi.end(), rng);
  }

  for (Eigen::Index target = 0; target < d; ++target) {
    std::vector<Eigen::Index> members;
    for (Eigen::Index i = 0; i < d; ++i)
      if (g[static_cast<std::size_t>(i)] == target) members.push_back(i);
    if (members.empty()) continue;
    const auto cols = static_cast<Eigen::Index>(members.size());
    // n x |fibre| isometry: amplitudes of the fibre columns across Kraus operators
    const CMatrix amp = haar_unitary(n, rng).leftCols(cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Eigen::Index i = members[static_cast<std::size_t>(c)];
      for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index row = perms[static_cast<std::size_t>(k)][static_cast<std::size_t>(target)];
        kraus[static_cast<std::size_t>(k)](row, i) = amp(k, c);
      }
    }
  }
  return build_channel(kraus);
}

}  // namespace cohvec
