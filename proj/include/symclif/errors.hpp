// Copyright 2026 The symclif Authors
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

namespace symclif {

// Malformed text input (Pauli strings, tableau text, JSON specs).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands with mismatched qubit counts or matrix shapes.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A size or cost guard was exceeded (dense caps, enumeration caps).
class ResourceGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested operation has no construction for this symmetry.
class UnsupportedSpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical verification failed after all retries.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace symclif
