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

// JSON and text formats. Complex numbers are [re, im] pairs; objects keep
// insertion order so that output files are byte-stable.

#include <string>

#include <json.hpp>

#include "cohvec/channel.hpp"
#include "cohvec/convert.hpp"
#include "cohvec/quantifiers.hpp"

namespace cohvec::io {

using Json = nlohmann::ordered_json;

/// "[0.6,0.2,0.2]" or "0.6,0.2,0.2".
RVector parse_vector(const std::string& text);

/// Preset string ("mcs:3", "depolarized-mcs:3:0.3", "bloch:0.6:0:0",
/// "diag:0.5:0.5") or "@path.json".
DensityMatrix parse_state(const std::string& spec);

Json read_file(const std::string& path);

Json to_json(const RVector& v);
Json to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

/// {"dim", "matrix"}.
Json to_json(const DensityMatrix& rho);
/// {"dim", "amplitudes"}.
Json to_json(const PureState& psi);
/// Accepts either form.
DensityMatrix state_from_json(const Json& j);

/// {"weights", "states"}.
Json to_json(const PureEnsemble& ens);
PureEnsemble ensemble_from_json(const Json& j);

/// {"dim", "kraus"}.
Json to_json(const IncoherentChannel& ch);
IncoherentChannel channel_from_json(const Json& j);

Json to_json(const GcvResult& g);
Json to_json(const ConversionVerdict& v);

/// {state, fn, value, bound_direction, converged}.
Json quantifier_record(const std::string& state, const std::string& fn, const QuantifierValue& q);

/// Ten significant digits, '.' decimal point.
std::string format_real(Real x);

}  // namespace cohvec::io
