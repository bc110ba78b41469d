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

#include <cstdint>
#include <vector>

#include "cohvec/state.hpp"

namespace cohvec {

inline constexpr Real kKrausZero = 1e-12;
inline constexpr Real kCompletenessTolerance = 1e-9;
/// Branches of a selective operation with smaller probability are dropped.
inline constexpr Real kBranchCutoff = 1e-12;

/// Kraus operator mapping every basis vector |i> to a multiple of |f(i)>.
class IncoherentKraus {
 public:
  /// Infers the relabeling from the sparsity pattern. Throws ValidationError
  /// when a column has more than one entry above kKrausZero.
  explicit IncoherentKraus(CMatrix k);

  const CMatrix& matrix() const noexcept { return k_; }
  const std::vector<Eigen::Index>& relabeling() const noexcept { return relabel_; }
  Eigen::Index dim() const noexcept { return k_.rows(); }

 private:
  CMatrix k_;
  std::vector<Eigen::Index> relabel_;  // column i -> row f(i); zero columns map to 0
};

class IncoherentChannel {
 public:
  IncoherentChannel() = default;
  explicit IncoherentChannel(std::vector<IncoherentKraus> kraus);

  const std::vector<IncoherentKraus>& kraus() const noexcept { return kraus_; }
  Eigen::Index dim() const { return kraus_.front().dim(); }

 private:
  std::vector<IncoherentKraus> kraus_;
};

/// Conditional output of one Kraus branch.
struct Outcome {
  Real probability;
  DensityMatrix state;
};

IncoherentChannel build_channel(const std::vector<CMatrix>& kraus);

DensityMatrix apply(const IncoherentChannel& ch, const DensityMatrix& rho);

/// Branches with probability above 1e-12; the rest are dropped.
std::vector<Outcome> selective_apply(const IncoherentChannel& ch, const DensityMatrix& rho);

/// Normalized images K_n|psi> with their probabilities.
std::vector<std::pair<Real, PureState>> selective_apply(const IncoherentChannel& ch, const PureState& psi);

/// Random incoherent channel with N Kraus operators. The relabelings are
/// f_n = pi_n o g with a shared random function g (fibres of size <= N) and
/// independent random permutations pi_n; amplitudes inside each fibre of g
/// come from a Haar isometry, which makes sum_n K_n^dagger K_n = I exact.
IncoherentChannel random_incoherent_channel(Eigen::Index d, Eigen::Index n, std::uint64_t seed);

}  // namespace cohvec
