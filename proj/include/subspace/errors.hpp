// Copyright 2026 The subspace-sim Authors
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

namespace subspace {

/// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Mismatched qubit counts or vector lengths.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Invalid argument values (bad ranges, malformed text, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A configured resource limit (qubit cap, dimension cap, term cap) was hit.
class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& msg, std::size_t partial = 0)
      : Error(msg), partial_dimension(partial) {}

  /// For dimension-cap aborts: the dimension reached before giving up.
  std::size_t partial_dimension = 0;
};

/// An internal consistency condition failed (non-closed basis,
/// non-antisymmetric adjoint, observable escaping its cone, ...).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// A circuit, gate, or observable is outside the class an engine supports.
class InadmissibleError : public Error {
 public:
  explicit InadmissibleError(const std::string& msg, std::size_t gate_index = kNoGate)
      : Error(msg), offending_gate(gate_index) {}

  static constexpr std::size_t kNoGate = static_cast<std::size_t>(-1);
  std::size_t offending_gate = kNoGate;
};

/// An expectation source cannot answer a requested Pauli word.
class UnanswerableWordError : public Error {
 public:
  explicit UnanswerableWordError(const std::string& msg, std::string offender = {})
      : Error(msg), offending_word(std::move(offender)) {}

  std::string offending_word;
};

/// Requested operation is not supported for the given input.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Configuration / schema violations; `path` is the offending field path.
class ConfigError : public Error {
 public:
  ConfigError(std::string field_path, const std::string& msg)
      : Error(field_path + ": " + msg), path(std::move(field_path)) {}

  std::string path;
};

}  // namespace subspace
