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

#include <stdexcept>
#include <string>

namespace cohvec {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of incompatible dimension.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A value violates the invariants of its type (not a density matrix, not an
/// incoherent Kraus set, malformed probability vector, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input: state specs, vectors, JSON documents.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed (eigensolver, degenerate orthonormalization).
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace cohvec
