// Copyright 2026 The ecrkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace ecrkit {

/// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// linear algebra
struct DimMismatch : Error {
  using Error::Error;
};
struct NonHermitian : Error {
  using Error::Error;
};
struct NotPowerOfTwo : Error {
  using Error::Error;
};
struct NotUnitary : Error {
  using Error::Error;
};

// gate registry
struct UnknownGate : Error {
  using Error::Error;
};
struct WrongParamCount : Error {
  using Error::Error;
};

// circuit IR
struct SyntaxError : Error {
  int line;
  SyntaxError(int line_, const std::string& what_)
      : Error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};
struct QubitOutOfRange : Error {
  using Error::Error;
};
struct DuplicateQubit : Error {
  using Error::Error;
};
struct TooManyQubits : Error {
  using Error::Error;
};

// transpilation
struct VerificationFailed : Error {
  using Error::Error;
};
struct SearchFailed : Error {
  using Error::Error;
};
struct UnsupportedGate : Error {
  using Error::Error;
};
struct NoFeasibleDecomposition : Error {
  using Error::Error;
};

// pulse model
struct AmbiguousDressing : Error {
  using Error::Error;
};
struct DegenerateCoeffs : Error {
  using Error::Error;
};

}  // namespace ecrkit
