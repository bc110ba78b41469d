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

#include "cohvec/quantifiers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cohvec {

namespace {

constexpr std::uint64_t kTopStream = 0x7000;
constexpr std::uint64_t kRoofStream = 0x7100;

Real xlogx(Real x) { return x > 0 ? x * std::log(x) : Real(0); }

Real power_sum(const RVector& u, Real alpha) {
  Real s = 0;
  for (Eigen::Index i = 0; i < u.size(); ++i)
    if (u[i] > 0) s += std::pow(u[i], alpha);
  return s;
}

Real parse_number(const std::string& text, const std::string& spec) {
  std::istringstream in(text);
  Real v;
  if (!(in >> v) || !in.eof()) throw ValidationError("bad parameter in function spec '" + spec + "'");
  return v;
}

// sum_m q_m f(mu_m) where row m holds q_m mu_m
Real roof_value(const RMatrix& rows, const CoherenceFn& f) {
  Real total = 0;
  RVector row;
  for (Eigen::Index m = 0; m < rows.rows(); ++m) {
    const Real q = rows.row(m).sum();
    if (q < kWeightCutoff) continue;
    row = rows.row(m).transpose() / q;
    total += q * f(row);
  }
  return total;
}

struct MinResult {
  Real value;
  std::vector<Real> params;
  bool converged;
};

MinResult minimize_rows(const DecompositionMap& map, const RowObjective& objective, const OptimizerConfig& cfg,
                        std::uint64_t stream) {
  const RowObjective negated = [&](const RMatrix& rows) { return -objective(rows); };
  const EnsembleSearch s = maximize_over_decompositions(map, negated, cfg, stream);
  return {-s.value, s.params, s.converged};
}

RowObjective top_objective(const CoherenceFn& f) {
  return [&f](const RMatrix& rows) { return f(sorted_row_sum(rows)); };
}

RowObjective roof_objective(const CoherenceFn& f) {
  return [&f](const RMatrix& rows) { return roof_value(rows, f); };
}

// rows of an explicit ensemble, for evaluating objectives at known witnesses
RMatrix rows_of(const PureEnsemble& ens) {
  RMatrix rows(static_cast<Eigen::Index>(ens.size()), ens.dim());
  for (std::size_t m = 0; m < ens.size(); ++m)
    rows.row(static_cast<Eigen::Index>(m)) =
        ens.weights()[static_cast<Eigen::Index>(m)] * ens.states()[m].amplitudes().cwiseAbs2().transpose();
  return rows;
}

QuantifierReport pure_report(const PureState& psi, const CoherenceFn& f) {
  QuantifierReport r;
  const Real v = f(coherence_vector(psi));
  r.cr = r.top = r.cv = {v, BoundDirection::Exact, true};
  r.nu.nu = sort_desc(coherence_vector(psi));
  r.nu.heuristic = false;
  r.top_witness = PureEnsemble(RVector::Ones(1), {psi});
  return r;
}

}  // namespace

CoherenceFn::CoherenceFn(std::string name, FnFamily family, std::optional<Real> parameter, bool strict,
                         Eigen::Index d)
    : name_(std::move(name)), family_(family), parameter_(parameter), strict_(strict), dim_(d) {
  if (d < 2) throw ValidationError("coherence functions need d >= 2");
}

CoherenceFn CoherenceFn::top_k(Eigen::Index d, int k) {
  if (k < 1 || k > d - 1) throw ValidationError("f_k needs 1 <= k <= d-1");
  return CoherenceFn("f_k:" + std::to_string(k), FnFamily::TopK, Real(k), false, d);
}

CoherenceFn CoherenceFn::linear(Eigen::Index d) {
  return CoherenceFn("f_lin", FnFamily::Linear, std::nullopt, false, d);
}

CoherenceFn CoherenceFn::shannon(Eigen::Index d) {
  CoherenceFn f("shannon", FnFamily::Shannon, std::nullopt, true, d);
  f.normalizer_ = std::log(Real(d));
  return f;
}

CoherenceFn CoherenceFn::tsallis(Eigen::Index d, Real alpha) {
  if (!(alpha > 0) || alpha == 1) throw ValidationError("Tsallis index must be positive and != 1");
  std::ostringstream name;
  name << "tsallis:" << alpha;
  CoherenceFn f(name.str(), FnFamily::Tsallis, alpha, true, d);
  f.normalizer_ = (1 - std::pow(Real(d), 1 - alpha)) / (alpha - 1);
  return f;
}

CoherenceFn CoherenceFn::renyi(Eigen::Index d, Real alpha) {
  // outside (0, 1) the Renyi entropy is not concave on the simplex
  if (!(alpha > 0 && alpha < 1)) throw ValidationError("Renyi index must lie in (0, 1)");
  std::ostringstream name;
  name << "renyi:" << alpha;
  CoherenceFn f(name.str(), FnFamily::Renyi, alpha, true, d);
  f.normalizer_ = std::log(Real(d));
  return f;
}

CoherenceFn CoherenceFn::parse(const std::string& spec, Eigen::Index d) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto need_arg = [&] {
    if (arg.empty()) throw ValidationError("function '" + head + "' needs a parameter");
    return parse_number(arg, spec);
  };
  auto no_arg = [&] {
    if (colon != std::string::npos) throw ValidationError("function '" + head + "' takes no parameter");
  };
  if (head == "f_k") {
    const Real k = need_arg();
    if (k != std::floor(k)) throw ValidationError("f_k level must be an integer");
    return top_k(d, static_cast<int>(k));
  }
  if (head == "f_lin") return no_arg(), linear(d);
  if (head == "shannon") return no_arg(), shannon(d);
  if (head == "tsallis") return tsallis(d, need_arg());
  if (head == "renyi") return renyi(d, need_arg());
  if (head == "geometric") return no_arg(), top_k(d, 1);
  throw ValidationError("unknown coherence function '" + spec + "'");
}

Real CoherenceFn::operator()(const RVector& u) const {
  if (u.size() != dim_) throw DimensionError("coherence function of dimension " + std::to_string(dim_) +
                                             " applied to a vector of length " + std::to_string(u.size()));
  Real v = 0;
  switch (family_) {
    case FnFamily::TopK:
      v = 1 - top_k_sum(u, level());
      break;
    case FnFamily::Linear:
      v = 1 - u.maxCoeff() + u.minCoeff();
      break;
    case FnFamily::Shannon:
      for (Eigen::Index i = 0; i < u.size(); ++i) v -= xlogx(u[i]);
      v /= normalizer_;
      break;
    case FnFamily::Tsallis: {
      const Real a = *parameter_;
      v = (1 - power_sum(u, a)) / (a - 1) / normalizer_;
      break;
    }
    case FnFamily::Renyi: {
      const Real a = *parameter_;
      v = std::log(power_sum(u, a)) / (1 - a) / normalizer_;
      break;
    }
  }
  // round-off at the top of the lattice
  return std::max(v, Real(0));
}

std::vector<CoherenceFn> builtin_fns(Eigen::Index d) {
  std::vector<CoherenceFn> fns;
  for (int k = 1; k <= d - 1; ++k) fns.push_back(CoherenceFn::top_k(d, k));
  fns.push_back(CoherenceFn::linear(d));
  fns.push_back(CoherenceFn::shannon(d));
  fns.push_back(CoherenceFn::tsallis(d, 0.5));
  fns.push_back(CoherenceFn::tsallis(d, 2.0));
  fns.push_back(CoherenceFn::renyi(d, 0.5));
  return fns;
}

QuantifierValue c_cv(const GcvResult& nu, const CoherenceFn& f) {
  return {f(nu.nu), nu.heuristic ? BoundDirection::Upper : BoundDirection::Exact, nu.all_converged()};
}

QuantifierValue c_cv(const DensityMatrix& rho, const CoherenceFn& f, const OptimizerConfig& cfg) {
  return c_cv(gcv(rho, cfg), f);
}

QuantifierValue c_cr(const DensityMatrix& rho, const CoherenceFn& f, const OptimizerConfig& cfg) {
  if (const auto psi = as_pure(rho)) return {f(coherence_vector(*psi)), BoundDirection::Exact, true};
  const DecompositionMap map(rho, cfg.members_for(rho.dim(), spectral(rho).rank()));
  const MinResult general = minimize_rows(map, roof_objective(f), cfg, kRoofStream);
  QuantifierValue out{general.value, BoundDirection::Upper, general.converged};
  if (f.family() == FnFamily::TopK) {
    // convex roof of f_k equals 1 - S_k
    const LevelResult level = s_k_sup(rho, f.level(), cfg);
    if (1 - level.value < out.value) out = {1 - level.value, BoundDirection::Upper, level.converged};
  }
  return out;
}

QuantifierValue c_top(const DensityMatrix& rho, const CoherenceFn& f, const OptimizerConfig& cfg) {
  if (const auto psi = as_pure(rho)) return {f(coherence_vector(*psi)), BoundDirection::Exact, true};
  const DecompositionMap map(rho, cfg.members_for(rho.dim(), spectral(rho).rank()));
  const MinResult m = minimize_rows(map, top_objective(f), cfg, kTopStream);
  return {m.value, BoundDirection::Upper, m.converged};
}

QuantifierReport quantify(const DensityMatrix& rho, const CoherenceFn& f, const OptimizerConfig& cfg) {
  if (f.dim() != rho.dim()) throw DimensionError("function and state differ in dimension");
  if (const auto psi = as_pure(rho)) return pure_report(*psi, f);

  QuantifierReport r;
  r.nu = gcv(rho, cfg);
  const DecompositionMap map(rho, cfg.members_for(rho.dim(), spectral(rho).rank()));

  const MinResult top = minimize_rows(map, top_objective(f), cfg, kTopStream);
  const MinResult roof = minimize_rows(map, roof_objective(f), cfg, kRoofStream);
  const PureEnsemble top_ens = map.ensemble(top.params);
  const PureEnsemble roof_ens = map.ensemble(roof.params);

  // every ensemble found anywhere is a feasible point for both minimizations
  std::vector<const PureEnsemble*> candidates{&top_ens, &roof_ens};
  for (const auto& w : r.nu.witnesses) candidates.push_back(&w);

  r.top = {top.value, BoundDirection::Upper, top.converged};
  r.cr = {roof.value, BoundDirection::Upper, roof.converged};
  r.top_witness = top_ens;
  for (const PureEnsemble* e : candidates) {
    const RMatrix rows = rows_of(*e);
    const Real t = f(sorted_row_sum(rows));
    if (t < r.top.value) {
      r.top.value = t;
      r.top_witness = *e;
    }
    r.cr.value = std::min(r.cr.value, roof_value(rows, f));
  }

  // fold the new decomposition points into the nu estimate
  const Eigen::Index d = rho.dim();
  for (const PureEnsemble* e : {&top_ens, &roof_ens}) {
    const RVector s = lorenz(decomposition_point(*e)).partial_sums;
    for (Eigen::Index j = 1; j < d; ++j) r.nu.levels[j - 1] = std::max(r.nu.levels[j - 1], s[j]);
  }
  for (Eigen::Index j = 1; j < d - 1; ++j) r.nu.levels[j] = std::max(r.nu.levels[j], r.nu.levels[j - 1]);
  r.nu.nu = nu_from_levels(r.nu.levels);
  // convex roof of f_k equals 1 - S_k; each level is attained by a known ensemble
  if (f.family() == FnFamily::TopK) r.cr.value = std::min(r.cr.value, 1 - r.nu.levels[f.level() - 1]);
  r.cv = c_cv(r.nu, f);
  return r;
}

const char* to_string(BoundDirection b) { return b == BoundDirection::Exact ? "exact" : "upper"; }

}  // namespace cohvec
