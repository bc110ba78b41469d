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

// Decision procedures for rho -> sigma under incoherent operations. Exact
// criteria exist for pure -> pure, pure -> mixed and qubit -> qubit; for the
// general case only a necessary condition is available, so the answer is
// three-valued and every definite answer carries a checkable certificate.

#include <string>
#include <variant>
#include <vector>

#include "cohvec/gcv.hpp"

namespace cohvec {

enum class Verdict { Possible, Impossible, Inconclusive };

/// Partial sums of the two vectors compared; `index` is the first violated
/// level (1-based) for Impossible, or -1.
struct MajorizationCertificate {
  RVector source_sums;
  RVector target_sums;
  int index = -1;
  Real excess = 0;
};

/// An ensemble of the target whose decomposition point majorizes the source
/// coherence vector with the given margin.
struct EnsembleCertificate {
  PureEnsemble ensemble;
  Real margin = 0;
};

/// The two qubit inequalities evaluated as lhs <= rhs.
struct QubitCertificate {
  Real lhs_i = 0, rhs_i = 0;
  Real lhs_ii = 0, rhs_ii = 0;
  bool holds_i = false, holds_ii = false;
};

using Certificate = std::variant<std::monostate, MajorizationCertificate, EnsembleCertificate, QubitCertificate>;

struct ConversionVerdict {
  Verdict verdict = Verdict::Inconclusive;
  std::string method;
  Certificate certificate;
};

ConversionVerdict pure_to_pure(const PureState& psi, const PureState& phi, Real eps = kMajorizationEps);

struct ConversionConfig {
  /// acceptance threshold of the searched feasibility margin
  Real margin_tolerance = -1e-9;
  /// slack on partial sums when comparing against estimated nu vectors
  Real pure_slack = 1e-3;
  Real mixed_slack = 1e-2;
};

ConversionVerdict pure_to_mixed(const PureState& psi, const DensityMatrix& sigma, const OptimizerConfig& cfg,
                                const ConversionConfig& conv = {});

/// Never Possible: nu(rho) majorized by nu(sigma) is only necessary.
ConversionVerdict mixed_necessary(const DensityMatrix& rho, const DensityMatrix& sigma, const OptimizerConfig& cfg,
                                  const ConversionConfig& conv = {});

ConversionVerdict qubit_convert(const BlochVector& r, const BlochVector& s);

/// Picks the strongest applicable criterion: pure -> pure, qubit, pure ->
/// mixed, then the necessary condition.
ConversionVerdict convert(const DensityMatrix& rho, const DensityMatrix& sigma, const OptimizerConfig& cfg,
                          const ConversionConfig& conv = {});

const char* to_string(Verdict v);

}  // namespace cohvec
