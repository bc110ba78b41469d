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

// Probability vectors, the majorization preorder and the majorization
// lattice supremum. Everything here is header-only and templated on the
// scalar type so that the lattice routines can be checked in extended
// precision against the double-precision path.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cohvec/error.hpp"

namespace cohvec {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Entries this far below zero are treated as round-off and clamped.
inline constexpr double kClampTolerance = 1e-12;
/// Allowed deviation of the entry sum from one.
inline constexpr double kSumTolerance = 1e-9;
/// Default tolerance of the majorization test for exact-arithmetic inputs.
inline constexpr double kMajorizationEps = 1e-9;

/// A point of the probability simplex.
template <typename Scalar = double>
class ProbVector {
 public:
  ProbVector() = default;

  explicit ProbVector(Vector<Scalar> entries) : entries_(std::move(entries)) {
    if (entries_.size() == 0) throw DimensionError("probability vector must be non-empty");
    for (Eigen::Index i = 0; i < entries_.size(); ++i) {
      if (!std::isfinite(static_cast<double>(entries_[i])))
        throw ValidationError("probability vector has a non-finite entry");
      if (entries_[i] < Scalar(-kClampTolerance))
        throw ValidationError("probability vector has a negative entry " +
                              std::to_string(static_cast<double>(entries_[i])));
      if (entries_[i] < Scalar(0)) entries_[i] = Scalar(0);
    }
    const Scalar total = entries_.sum();
    if (std::abs(static_cast<double>(total) - 1.0) > kSumTolerance)
      throw ValidationError("probability vector sums to " + std::to_string(static_cast<double>(total)));
  }

  ProbVector(std::initializer_list<Scalar> values)
      : ProbVector(Eigen::Map<const Vector<Scalar>>(values.begin(), static_cast<Eigen::Index>(values.size()))) {}

  const Vector<Scalar>& entries() const noexcept { return entries_; }
  Eigen::Index dim() const noexcept { return entries_.size(); }
  Scalar operator[](Eigen::Index i) const { return entries_[i]; }

 protected:
  Vector<Scalar> entries_;
};

/// A probability vector whose entries are non-increasing.
template <typename Scalar = double>
class OrderedProbVector : public ProbVector<Scalar> {
 public:
  OrderedProbVector() = default;

  explicit OrderedProbVector(Vector<Scalar> entries) : ProbVector<Scalar>(std::move(entries)) {
    const auto& e = this->entries_;
    for (Eigen::Index i = 0; i + 1 < e.size(); ++i) {
      if (e[i] < e[i + 1] - Scalar(kClampTolerance))
        throw ValidationError("ordered probability vector is not non-increasing at index " +
                              std::to_string(i));
    }
  }

  OrderedProbVector(std::initializer_list<Scalar> values)
      : OrderedProbVector(Eigen::Map<const Vector<Scalar>>(values.begin(), static_cast<Eigen::Index>(values.size()))) {}
};

/// Piecewise-linear curve through (j, s_j), j = 0..d, where s_j is the sum of
/// the j largest entries.
template <typename Scalar = double>
struct LorenzCurve {
  Vector<Scalar> partial_sums;  // size d + 1, partial_sums[0] == 0

  Eigen::Index dim() const noexcept { return partial_sums.size() - 1; }

  /// Linear interpolation at x in [0, d].
  Scalar operator()(Scalar x) const {
    const Eigen::Index d = dim();
    if (x <= Scalar(0)) return partial_sums[0];
    if (x >= Scalar(d)) return partial_sums[d];
    const auto j = static_cast<Eigen::Index>(std::floor(static_cast<double>(x)));
    const Scalar t = x - Scalar(j);
    return (Scalar(1) - t) * partial_sums[j] + t * partial_sums[j + 1];
  }
};

/// Stable non-increasing sort; ties keep their original order.
template <typename Scalar>
OrderedProbVector<Scalar> sort_desc(const ProbVector<Scalar>& u) {
  Vector<Scalar> sorted = u.entries();
  std::stable_sort(sorted.data(), sorted.data() + sorted.size(), std::greater<Scalar>());
  return OrderedProbVector<Scalar>(std::move(sorted));
}

/// Sum of the k largest entries of an arbitrary real vector.
template <typename Derived>
typename Derived::Scalar top_k_sum(const Eigen::MatrixBase<Derived>& values, Eigen::Index k) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = values.size();
  if (k <= 0) return Scalar(0);
  if (k >= n) return values.sum();
  Scalar buf[16];
  std::vector<Scalar> heap;
  Scalar* first = buf;
  if (n > 16) {
    heap.resize(static_cast<std::size_t>(n));
    first = heap.data();
  }
  for (Eigen::Index i = 0; i < n; ++i) first[i] = values[i];
  std::nth_element(first, first + k - 1, first + n, std::greater<Scalar>());
  return std::accumulate(first, first + k, Scalar(0));
}

template <typename Scalar>
LorenzCurve<Scalar> lorenz(const ProbVector<Scalar>& u) {
  const auto sorted = sort_desc(u);
  LorenzCurve<Scalar> curve;
  curve.partial_sums.resize(u.dim() + 1);
  curve.partial_sums[0] = Scalar(0);
  for (Eigen::Index j = 0; j < u.dim(); ++j)
    curve.partial_sums[j + 1] = curve.partial_sums[j] + sorted[j];
  return curve;
}

/// True iff every partial sum of sorted u is at most the matching partial sum
/// of sorted v plus eps.
template <typename Scalar>
bool is_majorized_by(const ProbVector<Scalar>& u, const ProbVector<Scalar>& v,
                     Scalar eps = Scalar(kMajorizationEps)) {
  if (u.dim() != v.dim()) throw DimensionError("majorization test needs equal dimensions");
  const auto lu = lorenz(u);
  const auto lv = lorenz(v);
  for (Eigen::Index j = 1; j <= u.dim(); ++j)
    if (lu.partial_sums[j] > lv.partial_sums[j] + eps) return false;
  return true;
}

/// Largest violation max_k (s_k(u) - s_k(v)); non-positive iff u is majorized by v.
template <typename Scalar>
Scalar majorization_excess(const ProbVector<Scalar>& u, const ProbVector<Scalar>& v) {
  if (u.dim() != v.dim()) throw DimensionError("majorization test needs equal dimensions");
  const auto lu = lorenz(u);
  const auto lv = lorenz(v);
  return (lu.partial_sums - lv.partial_sums).maxCoeff();
}

/// Entrywise convex combination of ordered vectors; stays ordered.
template <typename Scalar>
OrderedProbVector<Scalar> convex_combine(const ProbVector<Scalar>& weights,
                                         std::span<const OrderedProbVector<Scalar>> vectors) {
  if (static_cast<std::size_t>(weights.dim()) != vectors.size())
    throw DimensionError("one weight per vector required");
  const Eigen::Index d = vectors.front().dim();
  Vector<Scalar> acc = Vector<Scalar>::Zero(d);
  for (std::size_t m = 0; m < vectors.size(); ++m) {
    if (vectors[m].dim() != d) throw DimensionError("convex_combine needs vectors of equal dimension");
    acc += weights[static_cast<Eigen::Index>(m)] * vectors[m].entries();
  }
  return OrderedProbVector<Scalar>(std::move(acc));
}

template <typename Scalar>
OrderedProbVector<Scalar> convex_combine(const ProbVector<Scalar>& weights,
                                         const std::vector<OrderedProbVector<Scalar>>& vectors) {
  return convex_combine(weights, std::span<const OrderedProbVector<Scalar>>(vectors));
}

/// Least concave majorant of the points (j, heights[j]), j = 0..d, evaluated at
/// the integers. Monotone-chain upper hull; x-coordinates are already sorted.
template <typename Scalar>
Vector<Scalar> concave_envelope(const Vector<Scalar>& heights) {
  const Eigen::Index n = heights.size();
  std::vector<Eigen::Index> hull;
  hull.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    while (hull.size() >= 2) {
      const Eigen::Index a = hull[hull.size() - 2];
      const Eigen::Index b = hull.back();
      // drop b when it lies on or below the chord a-j
      const Scalar cross = (Scalar(b - a)) * (heights[j] - heights[a]) -
                           (Scalar(j - a)) * (heights[b] - heights[a]);
      if (cross >= Scalar(0))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(j);
  }
  Vector<Scalar> env(n);
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const Eigen::Index a = hull[h];
    const Eigen::Index b = hull[h + 1];
    for (Eigen::Index j = a; j <= b; ++j) {
      const Scalar t = Scalar(j - a) / Scalar(b - a);
      env[j] = (Scalar(1) - t) * heights[a] + t * heights[b];
    }
  }
  if (hull.size() == 1) env[0] = heights[0];
  return env;
}

/// Builds the ordered vector whose Lorenz curve is the concave envelope of
/// the given partial sums S_0..S_d (S_0 = 0, S_d = 1 are enforced).
template <typename Scalar>
OrderedProbVector<Scalar> vector_from_partial_sums(Vector<Scalar> sums) {
  const Eigen::Index d = sums.size() - 1;
  if (d < 1) throw DimensionError("need at least one entry");
  sums[0] = Scalar(0);
  sums[d] = Scalar(1);
  const Vector<Scalar> env = concave_envelope(sums);
  Vector<Scalar> out(d);
  for (Eigen::Index j = 0; j < d; ++j) out[j] = env[j + 1] - env[j];
  // envelope increments are non-increasing; tiny float noise may break ties
  for (Eigen::Index j = 1; j < d; ++j) out[j] = std::min(out[j], out[j - 1]);
  for (Eigen::Index j = 0; j < d; ++j) out[j] = std::max(out[j], Scalar(0));
  out /= out.sum();
  return OrderedProbVector<Scalar>(std::move(out));
}

/// Supremum in the majorization lattice: pointwise max of the Lorenz curves,
/// then its least concave majorant.
template <typename Scalar>
OrderedProbVector<Scalar> lattice_sup(std::span<const OrderedProbVector<Scalar>> set) {
  if (set.empty()) throw ValidationError("lattice supremum of an empty set");
  const Eigen::Index d = set.front().dim();
  Vector<Scalar> upper = Vector<Scalar>::Zero(d + 1);
  for (const auto& u : set) {
    if (u.dim() != d) throw DimensionError("lattice supremum needs vectors of equal dimension");
    upper = upper.cwiseMax(lorenz(u).partial_sums);
  }
  return vector_from_partial_sums(std::move(upper));
}

template <typename Scalar>
OrderedProbVector<Scalar> lattice_sup(const std::vector<OrderedProbVector<Scalar>>& set) {
  return lattice_sup(std::span<const OrderedProbVector<Scalar>>(set));
}

template <typename Scalar>
OrderedProbVector<Scalar> uniform_vector(Eigen::Index d) {
  return OrderedProbVector<Scalar>(Vector<Scalar>::Constant(d, Scalar(1) / Scalar(d)));
}

template <typename Scalar>
OrderedProbVector<Scalar> basis_vector(Eigen::Index d) {
  Vector<Scalar> e = Vector<Scalar>::Zero(d);
  e[0] = Scalar(1);
  return OrderedProbVector<Scalar>(std::move(e));
}

}  // namespace cohvec
