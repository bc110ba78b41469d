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

#include "cohvec/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace cohvec::io {

namespace {

Real parse_real(const std::string& token) {
  Real value = 0;
  const char* first = token.data();
  const char* last = first + token.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && last[-1] == ' ') --last;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) throw ParseError("not a number: '" + token + "'");
  return value;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<Real>(), 0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("complex entries must be [re, im] pairs");
  return {j[0].get<Real>(), j[1].get<Real>()};
}

Json number(Real x) {
  if (std::isfinite(x)) return x;
  return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
}

Json certificate_json(const MajorizationCertificate& c) {
  Json j;
  j["type"] = "majorization";
  j["source_partial_sums"] = to_json(c.source_sums);
  j["target_partial_sums"] = to_json(c.target_sums);
  j["violated_index"] = c.index < 0 ? Json(nullptr) : Json(c.index);
  j["excess"] = c.excess;
  return j;
}

Json certificate_json(const EnsembleCertificate& c) {
  Json j;
  j["type"] = "ensemble";
  j["margin"] = c.margin;
  j["point"] = to_json(decomposition_point(c.ensemble).entries());
  j["ensemble"] = to_json(c.ensemble);
  return j;
}

Json certificate_json(const QubitCertificate& c) {
  Json j;
  j["type"] = "qubit";
  j["condition_i"] = {{"lhs", number(c.lhs_i)}, {"rhs", number(c.rhs_i)}, {"holds", c.holds_i}};
  j["condition_ii"] = {{"lhs", number(c.lhs_ii)}, {"rhs", number(c.rhs_ii)}, {"holds", c.holds_ii}};
  return j;
}

}  // namespace

RVector parse_vector(const std::string& text) {
  std::string body = text;
  const auto open = body.find_first_not_of(' ');
  if (open != std::string::npos && body[open] == '[') {
    const auto close = body.find_last_not_of(' ');
    if (body[close] != ']') throw ParseError("unbalanced brackets in '" + text + "'");
    body = body.substr(open + 1, close - open - 1);
  }
  const auto tokens = split(body, ',');
  if (tokens.empty()) throw ParseError("empty vector");
  RVector v(static_cast<Eigen::Index>(tokens.size()));
  for (std::size_t i = 0; i < tokens.size(); ++i) v[static_cast<Eigen::Index>(i)] = parse_real(tokens[i]);
  return v;
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError("invalid JSON in '" + path + "': " + e.what());
  }
}

DensityMatrix parse_state(const std::string& spec) {
  if (spec.empty()) throw ParseError("empty state spec");
  if (spec.front() == '@') return state_from_json(read_file(spec.substr(1)));
  const auto parts = split(spec, ':');
  std::vector<Real> params;
  for (std::size_t i = 1; i < parts.size(); ++i) params.push_back(parse_real(parts[i]));
  try {
    return preset(parts.front(), params);
  } catch (const ValidationError& e) {
    throw ParseError("state '" + spec + "': " + e.what());
  }
}

Json to_json(const RVector& v) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

Json to_json(const CMatrix& m) {
  Json j = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    j.push_back(std::move(row));
  }
  return j;
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw ParseError("matrix must be a list of rows");
  const std::size_t rows = j.size(), cols = j[0].size();
  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ParseError("matrix rows differ in length");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_from_json(j[r][c]);
  }
  return m;
}

Json to_json(const DensityMatrix& rho) {
  Json j;
  j["dim"] = rho.dim();
  j["matrix"] = to_json(rho.matrix());
  return j;
}

Json to_json(const PureState& psi) {
  Json j;
  j["dim"] = psi.dim();
  Json amps = Json::array();
  for (Eigen::Index i = 0; i < psi.dim(); ++i) amps.push_back({psi.amplitudes()[i].real(), psi.amplitudes()[i].imag()});
  j["amplitudes"] = std::move(amps);
  return j;
}

DensityMatrix state_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw ParseError("state must be a JSON object");
    DensityMatrix rho;
    if (j.contains("matrix")) {
      rho = DensityMatrix(matrix_from_json(j.at("matrix")));
    } else if (j.contains("amplitudes")) {
      const Json& a = j.at("amplitudes");
      if (!a.is_array() || a.empty()) throw ParseError("amplitudes must be a non-empty list");
      CVector v(static_cast<Eigen::Index>(a.size()));
      for (std::size_t i = 0; i < a.size(); ++i) v[static_cast<Eigen::Index>(i)] = complex_from_json(a[i]);
      rho = DensityMatrix(PureState(v));
    } else {
      throw ParseError("state needs a 'matrix' or 'amplitudes' field");
    }
    if (j.contains("dim") && j.at("dim").get<Eigen::Index>() != rho.dim())
      throw ParseError("'dim' does not match the data");
    return rho;
  } catch (const ValidationError& e) {
    throw ParseError(std::string("invalid state: ") + e.what());
  } catch (const Json::exception& e) {
    throw ParseError(std::string("invalid state: ") + e.what());
  }
}

Json to_json(const PureEnsemble& ens) {
  Json j;
  j["weights"] = to_json(ens.weights());
  Json states = Json::array();
  for (const auto& s : ens.states()) states.push_back(to_json(s));
  j["states"] = std::move(states);
  return j;
}

PureEnsemble ensemble_from_json(const Json& j) {
  try {
    const Json& w = j.at("weights");
    const Json& s = j.at("states");
    if (w.size() != s.size()) throw ParseError("one weight per state required");
    RVector weights(static_cast<Eigen::Index>(w.size()));
    std::vector<PureState> states;
    for (std::size_t i = 0; i < w.size(); ++i) {
      weights[static_cast<Eigen::Index>(i)] = w[i].get<Real>();
      const auto psi = as_pure(state_from_json(s[i]));
      if (!psi) throw ParseError("ensemble members must be pure");
      states.push_back(*psi);
    }
    return PureEnsemble(weights, states);
  } catch (const ValidationError& e) {
    throw ParseError(std::string("invalid ensemble: ") + e.what());
  } catch (const Json::exception& e) {
    throw ParseError(std::string("invalid ensemble: ") + e.what());
  }
}

Json to_json(const IncoherentChannel& ch) {
  Json j;
  j["dim"] = ch.dim();
  Json kraus = Json::array();
  for (const auto& k : ch.kraus()) kraus.push_back(to_json(k.matrix()));
  j["kraus"] = std::move(kraus);
  return j;
}

IncoherentChannel channel_from_json(const Json& j) {
  try {
    std::vector<CMatrix> kraus;
    for (const auto& k : j.at("kraus")) kraus.push_back(matrix_from_json(k));
    if (kraus.empty()) throw ParseError("channel needs at least one Kraus operator");
    if (j.contains("dim") && j.at("dim").get<Eigen::Index>() != kraus.front().rows())
      throw ParseError("'dim' does not match the Kraus operators");
    return build_channel(kraus);
  } catch (const ValidationError& e) {
    throw ParseError(std::string("invalid channel: ") + e.what());
  } catch (const DimensionError& e) {
    throw ParseError(std::string("invalid channel: ") + e.what());
  } catch (const Json::exception& e) {
    throw ParseError(std::string("invalid channel: ") + e.what());
  }
}

Json to_json(const GcvResult& g) {
  Json j;
  j["nu"] = to_json(g.nu.entries());
  j["S"] = to_json(g.levels);
  Json conv = Json::array();
  for (bool c : g.converged) conv.push_back(c);
  j["converged"] = std::move(conv);
  Json disp = Json::array();
  for (Real x : g.dispersion) disp.push_back(x);
  j["dispersion"] = std::move(disp);
  j["heuristic"] = g.heuristic;
  Json wit = Json::array();
  for (const auto& w : g.witnesses) wit.push_back(to_json(w));
  j["witnesses"] = std::move(wit);
  return j;
}

Json to_json(const ConversionVerdict& v) {
  Json j;
  j["verdict"] = to_string(v.verdict);
  j["method"] = v.method;
  j["certificate"] = std::visit(
      [](const auto& c) -> Json {
        if constexpr (std::is_same_v<std::decay_t<decltype(c)>, std::monostate>)
          return nullptr;
        else
          return certificate_json(c);
      },
      v.certificate);
  return j;
}

Json quantifier_record(const std::string& state, const std::string& fn, const QuantifierValue& q) {
  Json j;
  j["state"] = state;
  j["fn"] = fn;
  j["value"] = q.value;
  j["bound_direction"] = to_string(q.bound);
  j["converged"] = q.converged;
  return j;
}

std::string format_real(Real x) {
  if (x == 0) return "0";  // avoids "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace cohvec::io
