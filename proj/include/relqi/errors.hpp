// Copyright 2026 The relqi Authors
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

namespace relqi {

// Base of every error raised by the library. The C API maps each subclass to
// a distinct status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes that do not fit together: dimension mismatch, bad subsystem split,
// malformed protocol graphs.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Inputs with the right shape that violate a physical invariant (non-PSD
// state, non-unitary coupling, off-shell momentum, |v| >= 1, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A computation that could not reach its accuracy target.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Unknown scenario, malformed flag or config line.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace relqi
