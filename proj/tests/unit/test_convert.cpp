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

#include "cohvec/channel.hpp"
#include "cohvec/convert.hpp"
#include "oracles.hpp"

using namespace cohvec;

namespace {

OptimizerConfig quick(std::uint64_t seed) {
  OptimizerConfig cfg(seed);
  cfg.restarts = 6;
  return cfg;
}

PureState pure(std::initializer_list<Complex> a) {
  return PureState::normalized(Eigen::Map<const CVector>(a.begin(), Eigen::Index(a.size())));
}

PureState random_pure(Eigen::Index d, std::mt19937_64& rng) {
  return PureState(haar_unitary(d, rng).col(0));
}

}  // namespace

TEST_SUITE("convert") {

TEST_CASE("pure to pure") {
  const auto src = PureState::normalized(CVector::Ones(3));
  const auto tgt = pure({1.0, 1.0, 0.0});
  const auto ok = pure_to_pure(src, tgt);
  CHECK(ok.verdict == Verdict::Possible);
  CHECK(ok.method == "pure-to-pure");
  const auto no = pure_to_pure(tgt, src);
  CHECK(no.verdict == Verdict::Impossible);
  const auto& c = std::get<MajorizationCertificate>(no.certificate);
  CHECK(c.index == 1);
  CHECK(c.excess == doctest::Approx(1.0 / 3));
  CHECK(c.source_sums[1] == doctest::Approx(0.5));
  CHECK(c.target_sums[1] == doctest::Approx(1.0 / 3));
  CHECK_THROWS_AS(pure_to_pure(src, pure({1.0, 0.0})), DimensionError);
}

TEST_CASE("pure to pure agrees with majorization of coherence vectors") {
  std::mt19937_64 rng(91);
  for (int i = 0; i < 300; ++i) {
    const Eigen::Index d = 2 + i % 4;
    const auto a = random_pure(d, rng), b = random_pure(d, rng);
    const auto mu = oracle::to_vec(coherence_vector(a).entries());
    const auto nu = oracle::to_vec(coherence_vector(b).entries());
    CHECK((pure_to_pure(a, b).verdict == Verdict::Possible) == oracle::majorized(mu, nu, kMajorizationEps));
  }
}

TEST_CASE("qubit inequalities") {
  CHECK(qubit_convert(BlochVector(0.8, 0, 0), BlochVector(0.5, 0, 0)).verdict == Verdict::Possible);
  CHECK(qubit_convert(BlochVector(0.5, 0, 0), BlochVector(0.8, 0, 0)).verdict == Verdict::Impossible);
  // in-plane reduction alone is not enough when the target is more polarized along z
  const auto v = qubit_convert(BlochVector(0.5, 0, 0.0), BlochVector(0.4, 0, 0.8));
  CHECK(v.verdict == Verdict::Impossible);
  const auto& c = std::get<QubitCertificate>(v.certificate);
  CHECK(c.holds_i);
  CHECK_FALSE(c.holds_ii);
  CHECK(c.lhs_ii == doctest::Approx(0.64));
  CHECK(c.rhs_ii == doctest::Approx(1 - 0.16 / 0.25));
  // incoherent source
  CHECK(qubit_convert(BlochVector(0, 0, 0.3), BlochVector(0, 0, 0.9)).verdict == Verdict::Possible);
  CHECK(qubit_convert(BlochVector(0, 0, 0.3), BlochVector(0.1, 0, 0)).verdict == Verdict::Impossible);
}

TEST_CASE("qubit condition (i) matches the nu ordering") {
  std::mt19937_64 rng(92);
  for (int i = 0; i < 500; ++i) {
    const auto a = oracle::random_bloch(rng), b = oracle::random_bloch(rng);
    const BlochVector r(a[0], a[1], a[2]), s(b[0], b[1], b[2]);
    const auto q = std::get<QubitCertificate>(qubit_convert(r, s).certificate);
    const bool by_nu = gcv_qubit(s).nu[0] >= gcv_qubit(r).nu[0] - 1e-12;
    CHECK(q.holds_i == by_nu);
    if (qubit_convert(r, s).verdict == Verdict::Possible)
      CHECK(mixed_necessary(presets::bloch(r), presets::bloch(s), quick(1)).verdict != Verdict::Impossible);
  }
}

TEST_CASE("pure to mixed") {
  const auto mcs = presets::mcs_vector(3);
  const auto v = pure_to_mixed(mcs, presets::depolarized_mcs(3, 0.3), quick(1));
  CHECK(v.verdict == Verdict::Possible);
  const auto& c = std::get<EnsembleCertificate>(v.certificate);
  CHECK(validate_ensemble(c.ensemble, presets::depolarized_mcs(3, 0.3)));
  CHECK(is_majorized_by(coherence_vector(mcs), ProbVector<Real>(decomposition_point(c.ensemble))));
  // an incoherent source cannot produce coherence
  const auto no = pure_to_mixed(PureState::basis(3, 0), presets::depolarized_mcs(3, 0.3), quick(1));
  CHECK(no.verdict != Verdict::Possible);
  CHECK(pure_to_mixed(PureState::basis(3, 0), presets::diag({0.2, 0.3, 0.5}), quick(1)).verdict ==
        Verdict::Possible);
}

TEST_CASE("pure to mixed on qubits is decided") {
  std::mt19937_64 rng(93);
  for (int i = 0; i < 40; ++i) {
    const auto psi = random_pure(2, rng);
    const auto b = oracle::random_bloch(rng);
    const auto sigma = presets::bloch(BlochVector(b[0], b[1], b[2]));
    const auto v = pure_to_mixed(psi, sigma, quick(i));
    CHECK(v.verdict != Verdict::Inconclusive);
    CHECK(v.verdict == qubit_convert(bloch_of(DensityMatrix(psi)), bloch_of(sigma)).verdict);
  }
}

TEST_CASE("channel images are never declared impossible") {
  std::mt19937_64 rng(94);
  for (int i = 0; i < 12; ++i) {
    const Eigen::Index d = 2 + i % 3;
    const auto psi = random_pure(d, rng);
    const auto ch = random_incoherent_channel(d, 2, rng());
    const auto image = apply(ch, DensityMatrix(psi));
    CHECK(convert(DensityMatrix(psi), image, quick(i)).verdict != Verdict::Impossible);
    const auto rho = random_density(d, d, rng());
    CHECK(convert(rho, apply(ch, rho), quick(i)).verdict != Verdict::Impossible);
  }
}

TEST_CASE("mixed to mixed is never possible by the necessary condition") {
  const auto v = mixed_necessary(presets::depolarized_mcs(3, 0.5), presets::depolarized_mcs(3, 0.3), quick(1));
  CHECK(v.verdict == Verdict::Impossible);
  CHECK(std::get<MajorizationCertificate>(v.certificate).index >= 1);
  CHECK(mixed_necessary(presets::depolarized_mcs(3, 0.3), presets::depolarized_mcs(3, 0.5), quick(1)).verdict ==
        Verdict::Inconclusive);
}

TEST_CASE("dispatch") {
  CHECK(convert(presets::mcs(2), presets::bloch(BlochVector(0.6, 0, 0.8)), quick(1)).method == "pure-to-pure");
  CHECK(convert(presets::bloch(BlochVector(0.5, 0, 0)), presets::bloch(BlochVector(0.3, 0, 0)), quick(1)).method ==
        "qubit-exact");
  CHECK(convert(presets::mcs(3), presets::depolarized_mcs(3, 0.3), quick(1)).method == "pure-to-mixed");
  CHECK(convert(presets::depolarized_mcs(3, 0.5), presets::depolarized_mcs(3, 0.3), quick(1)).method ==
        "nu-majorization");
  CHECK(std::string(to_string(Verdict::Inconclusive)) == "inconclusive");
}

}  // TEST_SUITE
