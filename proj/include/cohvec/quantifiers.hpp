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

// Symmetric concave functions on the simplex that vanish at (1, 0, ..., 0)
// and peak at the uniform vector, and the three coherence quantifiers built
// from them:
//   c_cr   convex roof     min over decompositions of sum_k q_k f(mu(psi_k))
//   c_top  top monotone    min over decompositions of f(decomposition point)
//   c_cv   vector monotone f(nu(rho))

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cohvec/gcv.hpp"

namespace cohvec {

enum class FnFamily { TopK, Linear, Shannon, Tsallis, Renyi };

class CoherenceFn {
 public:
  /// 1 - (sum of the k largest entries); k = 1 is the geometric measure.
  static CoherenceFn top_k(Eigen::Index d, int k);
  /// 1 - u_1 + u_d on sorted u.
  static CoherenceFn linear(Eigen::Index d);
  /// Shannon entropy divided by ln d.
  static CoherenceFn shannon(Eigen::Index d);
  /// Tsallis entropy of index alpha > 0 divided by its uniform value.
  static CoherenceFn tsallis(Eigen::Index d, Real alpha);
  /// Renyi entropy of index alpha in (0, 1) divided by ln d.
  static CoherenceFn renyi(Eigen::Index d, Real alpha);
  /// "f_k:2", "f_lin", "shannon", "tsallis:2", "renyi:0.5".
  static CoherenceFn parse(const std::string& spec, Eigen::Index d);

  const std::string& name() const noexcept { return name_; }
  FnFamily family() const noexcept { return family_; }
  std::optional<Real> parameter() const noexcept { return parameter_; }
  bool strictly_schur_concave() const noexcept { return strict_; }
  Eigen::Index dim() const noexcept { return dim_; }
  /// Level k for the TopK family.
  int level() const { return static_cast<int>(*parameter_); }

  /// Evaluates on any non-negative vector of length d (order irrelevant).
  Real operator()(const RVector& u) const;
  Real operator()(const ProbVector<Real>& u) const { return (*this)(u.entries()); }

 private:
  CoherenceFn(std::string name, FnFamily family, std::optional<Real> parameter, bool strict,
              Eigen::Index d);

  std::string name_;
  FnFamily family_;
  std::optional<Real> parameter_;
  bool strict_;
  Eigen::Index dim_;
  Real normalizer_ = 1;
};

/// f_1..f_{d-1}, f_lin, shannon, tsallis:0.5, tsallis:2, renyi:0.5.
std::vector<CoherenceFn> builtin_fns(Eigen::Index d);

/// Which side of the true value a heuristic result lies on.
enum class BoundDirection { Exact, Upper };

struct QuantifierValue {
  Real value = 0;
  BoundDirection bound = BoundDirection::Upper;
  bool converged = true;
};

QuantifierValue c_cv(const DensityMatrix& rho, const CoherenceFn& f, const OptimizerConfig& cfg);
QuantifierValue c_cv(const GcvResult& nu, const CoherenceFn& f);
QuantifierValue c_cr(const DensityMatrix& rho, const CoherenceFn& f, const OptimizerConfig& cfg);
QuantifierValue c_top(const DensityMatrix& rho, const CoherenceFn& f, const OptimizerConfig& cfg);

/// All three quantifiers of one state and function with shared work. The
/// c_top witness and the c_cr witness also feed the nu estimate, so the
/// reported values always satisfy c_cv <= c_top and c_cr <= c_top.
struct QuantifierReport {
  QuantifierValue cr, top, cv;
  GcvResult nu;
  PureEnsemble top_witness;
};

QuantifierReport quantify(const DensityMatrix& rho, const CoherenceFn& f, const OptimizerConfig& cfg);

const char* to_string(BoundDirection b);

}  // namespace cohvec
