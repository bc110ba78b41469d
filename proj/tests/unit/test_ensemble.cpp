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

#include <doctest.h>

#include <random>

#include "cohvec/ensemble.hpp"
#include "oracles.hpp"

using namespace cohvec;

namespace {

bool same_ray(const PureState& a, const PureState& b) {
  return std::abs(std::abs(a.amplitudes().dot(b.amplitudes())) - 1.0) < 1e-10;
}

PureState plus_minus(int sign) {
  CVector v(2);
  v << 1, double(sign);
  return PureState::normalized(v);
}

}  // namespace

TEST_SUITE("ensemble") {

TEST_CASE("isometry validation") {
  CHECK_NOTHROW(Isometry::identity(4, 2));
  CHECK_THROWS_AS(Isometry(CMatrix(CMatrix::Ones(3, 2))), ValidationError);
  CHECK_THROWS_AS(Isometry(CMatrix(CMatrix::Identity(2, 3))), DimensionError);
}

TEST_CASE("ensemble_from_isometry") {
  const auto rho = random_density(3, 3, 8);
  const auto spec = spectral(rho);
  const auto ens = ensemble_from_isometry(rho, Isometry::identity(3, 3));
  REQUIRE(ens.size() == 3);
  for (Eigen::Index j = 0; j < 3; ++j) {
    CHECK(ens.weights()[j] == doctest::Approx(spec.values[j]));
    CHECK(same_ray(ens.states()[std::size_t(j)], PureState(spec.vectors.col(j))));
  }

  const auto pure = DensityMatrix(presets::mcs_vector(3));
  const auto members = ensemble_from_isometry(pure, random_isometry(4, 1, 2));
  for (const auto& s : members.states()) CHECK(same_ray(s, presets::mcs_vector(3)));

  CMatrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  const auto pm = ensemble_from_isometry(presets::diag({0.5, 0.5}), Isometry(h));
  REQUIRE(pm.size() == 2);
  CHECK(pm.weights()[0] == doctest::Approx(0.5));
  CHECK(same_ray(pm.states()[0], plus_minus(1)));
  CHECK(same_ray(pm.states()[1], plus_minus(-1)));

  CHECK_THROWS_AS(ensemble_from_isometry(rho, Isometry::identity(3, 2)), DimensionError);
}

TEST_CASE("validate_ensemble") {
  const auto rho = random_density(4, 3, 9);
  CHECK(validate_ensemble(spectral_ensemble(rho), rho));
  CHECK_FALSE(validate_ensemble(PureEnsemble(RVector::Ones(1), {PureState::basis(2, 0)}), presets::diag({0.5, 0.5})));
  CHECK(validate_ensemble(ensemble_from_isometry(rho, random_isometry(9, 3, 4)), rho, 1e-8));
  CHECK_THROWS_AS(validate_ensemble(spectral_ensemble(rho), presets::mcs(3)), DimensionError);
}

TEST_CASE("ensemble weights are pruned and checked") {
  RVector w(3);
  w << 0.5, 0.5, 1e-13;
  const PureEnsemble e(w, {PureState::basis(2, 0), PureState::basis(2, 1), PureState::basis(2, 0)});
  CHECK(e.size() == 2);
  RVector bad(2);
  bad << 0.5, 0.6;
  CHECK_THROWS_AS(PureEnsemble(bad, {PureState::basis(2, 0), PureState::basis(2, 1)}), ValidationError);
}

TEST_CASE("decomposition_point") {
  const auto u = decomposition_point(PureEnsemble(RVector::Ones(1), {presets::mcs_vector(3)}));
  for (Eigen::Index i = 0; i < 3; ++i) CHECK(u[i] == doctest::Approx(1.0 / 3));

  RVector w(3);
  w << 0.2, 0.3, 0.5;
  const auto e = decomposition_point(PureEnsemble(w, {PureState::basis(3, 0), PureState::basis(3, 1), PureState::basis(3, 2)}));
  CHECK(e[0] == doctest::Approx(1.0));
  CHECK(e[1] == 0.0);

  const auto pm = decomposition_point(PureEnsemble(RVector::Constant(2, 0.5), {plus_minus(1), plus_minus(-1)}));
  CHECK(pm[0] == doctest::Approx(0.5));
  CHECK(pm[1] == doctest::Approx(0.5));
}

TEST_CASE("random_isometry") {
  for (Eigen::Index r = 1; r <= 4; ++r)
    for (Eigen::Index m = r; m <= 9; m += 2) {
      const auto v = random_isometry(m, r, std::uint64_t(10 * m + r));
      CHECK(max_abs(v.matrix().adjoint() * v.matrix() - CMatrix::Identity(r, r)) <= 1e-10);
    }
  const auto square = random_isometry(3, 3, 1);
  CHECK(max_abs(square.matrix() * square.matrix().adjoint() - CMatrix::Identity(3, 3)) <= 1e-10);
  CHECK(max_abs(random_isometry(5, 2, 6).matrix() - random_isometry(5, 2, 6).matrix()) == 0.0);
  CHECK_THROWS_AS(random_isometry(2, 3, 1), DimensionError);
}

TEST_CASE("mix_ensembles") {
  const auto rho = random_density(3, 2, 31);
  const auto a = ensemble_from_isometry(rho, random_isometry(4, 2, 1));
  const auto b = ensemble_from_isometry(rho, random_isometry(5, 2, 2));
  CHECK(max_abs(decomposition_point(mix_ensembles(a, b, 1.0)).entries() - decomposition_point(a).entries()) < 1e-12);
  CHECK(mix_ensembles(a, b, 1.0).size() == a.size());
  CHECK(max_abs(decomposition_point(mix_ensembles(a, b, 0.0)).entries() - decomposition_point(b).entries()) < 1e-12);
  CHECK(max_abs(decomposition_point(mix_ensembles(a, a, 0.5)).entries() - decomposition_point(a).entries()) < 1e-12);
  CHECK_THROWS_AS(mix_ensembles(a, spectral_ensemble(random_density(3, 2, 32)), 0.5), ValidationError);
  CHECK_THROWS_AS(mix_ensembles(a, b, 1.5), ValidationError);
}

TEST_CASE("decomposition points form a convex set") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index d = 2 + trial % 4;
    const auto rho = random_density(d, 1 + trial % d, 600 + trial);
    const Eigen::Index r = spectral(rho).rank();
    const auto a = ensemble_from_isometry(rho, random_isometry(r + trial % 3, r, rng()));
    const auto b = ensemble_from_isometry(rho, random_isometry(d * d, r, rng()));
    const double t = unit(rng);
    const auto mix = mix_ensembles(a, b, t);
    CHECK(validate_ensemble(mix, rho));
    const RVector want = t * decomposition_point(a).entries() + (1 - t) * decomposition_point(b).entries();
    CHECK(max_abs(decomposition_point(mix).entries() - want) < 1e-10);
  }
}

TEST_CASE("Haar-random ensembles reproduce the state") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index d = 2 + trial % 5;
    const auto rho = random_density(d, 1 + (trial / 5) % d, 700 + trial);
    const Eigen::Index r = spectral(rho).rank();
    const Eigen::Index m = r + Eigen::Index(rng() % std::uint64_t(d * d - r + 1));
    CHECK(validate_ensemble(ensemble_from_isometry(rho, random_isometry(m, r, rng())), rho, 1e-8));
  }
}

TEST_CASE("decomposition map rows are weighted coherence vectors") {
  const auto rho = random_density(3, 3, 51);
  const DecompositionMap map(rho, 5);
  std::mt19937_64 rng(52);
  std::normal_distribution<double> n;
  std::vector<double> p(std::size_t(map.num_params()));
  for (auto& x : p) x = n(rng);
  RMatrix rows;
  map.weighted_rows(p, rows);
  const auto ens = map.ensemble(p);
  CHECK(validate_ensemble(ens, rho));
  CHECK(max_abs(sorted_row_sum(rows) - decomposition_point(ens).entries()) < 1e-12);
  CHECK(rows.sum() == doctest::Approx(1.0));
  CHECK(validate_ensemble(map.ensemble(map.spectral_params()), rho));
  CHECK(max_abs(decomposition_point(map.ensemble(map.spectral_params())).entries() -
                decomposition_point(spectral_ensemble(rho)).entries()) < 1e-12);
  CHECK_THROWS_AS(DecompositionMap(rho, 2), ValidationError);
}

TEST_CASE("orthonormalize handles dependent columns") {
  CMatrix x(4, 2);
  x << 1, 2, 1, 2, 0, 0, 0, 0;
  const CMatrix q = orthonormalize(x);
  CHECK(max_abs(q.adjoint() * q - CMatrix::Identity(2, 2)) < 1e-12);
  CMatrix nearly(3, 2);
  nearly << 1, 1, 1e-9, 0, 0, 1e-9;
  const CMatrix q2 = orthonormalize(nearly);
  CHECK(max_abs(q2.adjoint() * q2 - CMatrix::Identity(2, 2)) < 1e-12);
}

}  // TEST_SUITE
