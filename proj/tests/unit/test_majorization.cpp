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

#include "cohvec/majorization.hpp"
#include "oracles.hpp"

using namespace cohvec;

namespace {

using V = OrderedProbVector<double>;

V ordered(const oracle::Vec& u) {
  return sort_desc(ProbVector<double>(Eigen::Map<const Eigen::VectorXd>(u.data(), Eigen::Index(u.size()))));
}

void check_entries(const ProbVector<double>& u, std::initializer_list<double> expected, double tol = 1e-12) {
  REQUIRE(u.dim() == Eigen::Index(expected.size()));
  Eigen::Index i = 0;
  for (double e : expected) CHECK(u[i++] == doctest::Approx(e).epsilon(tol));
}

}  // namespace

TEST_SUITE("majorization") {

TEST_CASE("probability vector validation") {
  CHECK_NOTHROW(ProbVector<double>{0.5, 0.5});
  CHECK_NOTHROW(ProbVector<double>{1.0 + 5e-10, -5e-13});
  const ProbVector<double> clamped{1.0, -5e-13};
  CHECK(clamped[1] == 0.0);
  CHECK_THROWS_AS((ProbVector<double>{0.6, 0.6}), ValidationError);
  CHECK_THROWS_AS((ProbVector<double>{1.1, -0.1}), ValidationError);
  CHECK_THROWS_AS(ProbVector<double>(Eigen::VectorXd()), DimensionError);
  CHECK_THROWS_AS((OrderedProbVector<double>{0.2, 0.8}), ValidationError);
}

TEST_CASE("sort_desc") {
  check_entries(sort_desc(ProbVector<double>{0.2, 0.5, 0.3}), {0.5, 0.3, 0.2});
  check_entries(sort_desc(ProbVector<double>{1, 0, 0}), {1, 0, 0});
  check_entries(sort_desc(ProbVector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3}), {1.0 / 3, 1.0 / 3, 1.0 / 3});
}

TEST_CASE("is_majorized_by") {
  CHECK(is_majorized_by(ProbVector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3}, ProbVector<double>{0.5, 0.3, 0.2}));
  CHECK(is_majorized_by(ProbVector<double>{0.5, 0.3, 0.2}, ProbVector<double>{1, 0, 0}));
  CHECK_FALSE(is_majorized_by(ProbVector<double>{0.6, 0.2, 0.2}, ProbVector<double>{0.5, 0.4, 0.1}));
  CHECK_FALSE(is_majorized_by(ProbVector<double>{0.5, 0.4, 0.1}, ProbVector<double>{0.6, 0.2, 0.2}));
  CHECK(majorization_excess(ProbVector<double>{0.6, 0.2, 0.2}, ProbVector<double>{0.5, 0.4, 0.1}) ==
        doctest::Approx(0.1));
  CHECK_THROWS_AS(is_majorized_by(ProbVector<double>{1, 0}, ProbVector<double>{1, 0, 0}), DimensionError);
}

TEST_CASE("lorenz curve") {
  const auto c = lorenz(ProbVector<double>{0.5, 0.3, 0.2});
  check_entries(ProbVector<double>(c.partial_sums.tail(3) - c.partial_sums.head(3)), {0.5, 0.3, 0.2});
  CHECK(c.partial_sums[0] == 0.0);
  CHECK(c.partial_sums[1] == doctest::Approx(0.5));
  CHECK(c.partial_sums[2] == doctest::Approx(0.8));
  CHECK(c.partial_sums[3] == doctest::Approx(1.0));
  CHECK(c(1.5) == doctest::Approx(0.65));

  const auto e = lorenz(ProbVector<double>{1, 0});
  CHECK(e.partial_sums[1] == 1.0);
  CHECK(e.partial_sums[2] == 1.0);

  const auto u = lorenz(uniform_vector<double>(3));
  CHECK(u.partial_sums[1] == doctest::Approx(1.0 / 3));
  CHECK(u.partial_sums[2] == doctest::Approx(2.0 / 3));
}

TEST_CASE("convex_combine") {
  check_entries(convex_combine(ProbVector<double>{1.0}, std::vector<V>{V{0.7, 0.3}}), {0.7, 0.3});
  check_entries(convex_combine(ProbVector<double>{0.5, 0.5}, std::vector<V>{V{1, 0}, V{0.5, 0.5}}), {0.75, 0.25});
  check_entries(convex_combine(ProbVector<double>{0.3, 0.7}, std::vector<V>{V{0.6, 0.3, 0.1}, V{0.5, 0.4, 0.1}}),
                {0.53, 0.37, 0.10});
  CHECK_THROWS_AS(convex_combine(ProbVector<double>{0.5, 0.5}, std::vector<V>{V{1, 0}}), DimensionError);
  CHECK_THROWS_AS(convex_combine(ProbVector<double>{0.5, 0.5}, std::vector<V>{V{1, 0}, V{1, 0, 0}}),
                  DimensionError);
}

TEST_CASE("lattice_sup examples") {
  check_entries(lattice_sup(std::vector<V>{V{0.6, 0.2, 0.2}, V{0.5, 0.4, 0.1}}), {0.6, 0.3, 0.1});
  check_entries(lattice_sup(std::vector<V>{V{0.7, 0.2, 0.1}}), {0.7, 0.2, 0.1});
  check_entries(lattice_sup(std::vector<V>{V{0.3, 0.3, 0.3, 0.1}, V{0.35, 0.25, 0.2, 0.2}}),
                {0.35, 0.275, 0.275, 0.1});
  CHECK_THROWS_AS(lattice_sup(std::vector<V>{}), ValidationError);
  CHECK_THROWS_AS(lattice_sup(std::vector<V>{V{1, 0}, V{1, 0, 0}}), DimensionError);
}

TEST_CASE("lattice_sup matches the brute-force envelope") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t d = 1 + trial % 8;
    std::vector<oracle::Vec> set;
    std::vector<V> typed;
    const int n = 1 + trial % 4;
    for (int i = 0; i < n; ++i) {
      set.push_back(oracle::random_simplex(d, rng, true));
      typed.push_back(ordered(set.back()));
    }
    const auto got = lattice_sup(typed);
    const auto want = oracle::sup(set);
    for (std::size_t j = 0; j < d; ++j) REQUIRE(got[Eigen::Index(j)] == doctest::Approx(want[j]).epsilon(1e-10));
    for (const auto& u : set) REQUIRE(oracle::majorized(u, oracle::to_vec(got.entries()), 1e-9));
  }
}

TEST_CASE("lattice_sup is below every common upper bound") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 2 + trial % 7;
    const auto u = oracle::random_simplex(d, rng), v = oracle::random_simplex(d, rng);
    const auto s = oracle::to_vec(lattice_sup(std::vector<V>{ordered(u), ordered(v)}).entries());
    int tested = 0;
    while (tested < 50) {
      // push a random point toward (1,0,...,0) until it dominates both
      const auto x = oracle::random_simplex(d, rng);
      const double t = unit(rng);
      oracle::Vec w(d);
      for (std::size_t i = 0; i < d; ++i) w[i] = (1 - t) * x[i] + (i == 0 ? t : 0.0);
      if (!oracle::majorized(u, w, 0) || !oracle::majorized(v, w, 0)) continue;
      ++tested;
      REQUIRE(oracle::majorized(s, w, 1e-9));
    }
  }
}

TEST_CASE("Lorenz dominance is majorization") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t d = 2 + trial % 5;
    const auto u = oracle::random_simplex(d, rng), v = oracle::random_simplex(d, rng);
    const auto lu = lorenz(ordered(u)), lv = lorenz(ordered(v));
    bool below = true;
    for (Eigen::Index j = 0; j <= Eigen::Index(d); ++j) below = below && lu(double(j)) <= lv(double(j)) + 1e-9;
    REQUIRE(below == is_majorized_by(ordered(u), ordered(v)));
    REQUIRE(below == oracle::majorized(u, v, 1e-9));
  }
}

TEST_CASE("convex_combine preserves pairwise majorization") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t d = 2 + trial % 5;
    std::vector<V> lo, hi;
    for (int m = 0; m < 3; ++m) {
      const auto a = oracle::random_simplex(d, rng), b = oracle::random_simplex(d, rng);
      const auto top = oracle::to_vec(lattice_sup(std::vector<V>{ordered(a), ordered(b)}).entries());
      lo.push_back(ordered(a));
      hi.push_back(ordered(top));
    }
    const auto w = oracle::random_simplex(3, rng);
    const ProbVector<double> weights{w[0], w[1], w[2]};
    REQUIRE(is_majorized_by(convex_combine(weights, lo), convex_combine(weights, hi)));
  }
}

TEST_CASE("uniform is the bottom and (1,0,...,0) the top") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t d = 1 + trial % 8;
    const auto u = ordered(oracle::random_simplex(d, rng, true));
    CHECK(is_majorized_by(uniform_vector<double>(Eigen::Index(d)), u));
    CHECK(is_majorized_by(u, basis_vector<double>(Eigen::Index(d))));
  }
}

TEST_CASE("extended precision agrees with double") {
  using L = OrderedProbVector<long double>;
  const auto sd = lattice_sup(std::vector<V>{V{0.3, 0.3, 0.3, 0.1}, V{0.35, 0.25, 0.2, 0.2}});
  const auto sl = lattice_sup(std::vector<L>{L{0.3L, 0.3L, 0.3L, 0.1L}, L{0.35L, 0.25L, 0.2L, 0.2L}});
  for (Eigen::Index i = 0; i < 4; ++i) CHECK(double(sl[i]) == doctest::Approx(sd[i]).epsilon(1e-14));
  CHECK(double(sl[1]) == doctest::Approx(0.275).epsilon(1e-15));
}

}  // TEST_SUITE
