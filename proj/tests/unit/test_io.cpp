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

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cohvec/io.hpp"

using namespace cohvec;

TEST_SUITE("io") {

TEST_CASE("vectors") {
  CHECK(io::parse_vector("[0.6,0.2,0.2]").isApprox(RVector{{0.6, 0.2, 0.2}}));
  CHECK(io::parse_vector(" 0.5, 0.5 ").isApprox(RVector{{0.5, 0.5}}));
  CHECK(io::parse_vector("1e-1,9e-1").isApprox(RVector{{0.1, 0.9}}));
  for (const char* bad : {"", "[]", "[0.5,", "0.5,,0.5", "a,b", "[0.5 0.5]", "0.5;0.5"})
    CHECK_THROWS_AS(io::parse_vector(bad), ParseError);
}

TEST_CASE("state specs") {
  CHECK(io::parse_state("mcs:3").dim() == 3);
  CHECK(io::parse_state("depolarized-mcs:3:0.3").matrix().isApprox(presets::depolarized_mcs(3, 0.3).matrix()));
  CHECK(io::parse_state("bloch:0.6:0:0").matrix().isApprox(presets::bloch(BlochVector(0.6, 0, 0)).matrix()));
  CHECK(io::parse_state("diag:0.5:0.5").off_diagonal_norm() == 0.0);
  for (const char* bad : {"mcs", "mcs:x", "bloch:2:0:0", "diag:0.5:0.6", "nope:3", "@/nonexistent/file.json"})
    CHECK_THROWS_AS(io::parse_state(bad), ParseError);
}

TEST_CASE("state files") {
  const auto path = std::filesystem::temp_directory_path() / "cohvec_io_state.json";
  {
    std::ofstream out(path);
    out << io::to_json(presets::depolarized_mcs(3, 0.3)).dump();
  }
  CHECK(io::parse_state("@" + path.string()).matrix().isApprox(presets::depolarized_mcs(3, 0.3).matrix()));
  {
    std::ofstream out(path);
    out << "{not json";
  }
  CHECK_THROWS_AS(io::parse_state("@" + path.string()), ParseError);
  std::filesystem::remove(path);
}

TEST_CASE("round trips") {
  const auto rho = random_density(3, 2, 7);
  CHECK(io::state_from_json(io::to_json(rho)).matrix().isApprox(rho.matrix(), 1e-15));
  const auto psi = presets::mcs_vector(4);
  CHECK(io::state_from_json(io::to_json(psi)).matrix().isApprox(DensityMatrix(psi).matrix(), 1e-15));
  const auto ens = spectral_ensemble(rho);
  const auto back = io::ensemble_from_json(io::to_json(ens));
  CHECK(validate_ensemble(back, rho));
  const auto ch = random_incoherent_channel(3, 2, 5);
  const auto ch2 = io::channel_from_json(io::to_json(ch));
  CHECK(apply(ch2, rho).matrix().isApprox(apply(ch, rho).matrix(), 1e-14));
  auto bad = io::to_json(rho);
  bad["matrix"][0][0] = "x";
  CHECK_THROWS(io::state_from_json(bad));
}

TEST_CASE("verdict json") {
  const auto v = pure_to_pure(PureState::basis(2, 0), presets::mcs_vector(2));
  const auto j = io::to_json(v);
  CHECK(j["verdict"] == "impossible");
  CHECK(j["method"] == "pure-to-pure");
  CHECK(j["certificate"]["violated_index"] == 1);
  const auto q = io::to_json(qubit_convert(BlochVector(0, 0, 0.3), BlochVector(0.1, 0, 0)));
  CHECK(q["certificate"]["condition_ii"]["rhs"].is_string());
}

TEST_CASE("number formatting") {
  CHECK(io::format_real(0.0) == "0");
  CHECK(io::format_real(-0.0) == "0");
  CHECK(io::format_real(0.5) == "0.5");
  CHECK(io::format_real(1.0 / 3) == "0.3333333333");
}

}  // TEST_SUITE
