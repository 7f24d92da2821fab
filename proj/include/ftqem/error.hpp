// Copyright 2026 The FTQEM Lab Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ftqem {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed circuit text. Carries the 1-based source line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Structurally invalid circuit (bad index, arity, classical-bit use).
class CircuitError : public Error {
 public:
  using Error::Error;
};

/// A gate the requested operation cannot handle.
class UnsupportedGate : public Error {
 public:
  using Error::Error;
};

/// Invalid experiment or model configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Failure inside a simulation backend (size caps, invariant violations).
class SimulationError : public Error {
 public:
  using Error::Error;
};

}  // namespace ftqem
