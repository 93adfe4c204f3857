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

#include <cmath>

#include "subspace/pauli.hpp"
#include "subspace/statevector.hpp"

namespace subspace {

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Where engines get <P>_rho from: the exact oracle (idealized tomography)
/// or a statistical estimator over an acquired dataset.
class ExpectationSource {
 public:
  virtual ~ExpectationSource() = default;

  virtual Estimate pauli_expectation(const PauliString& word) = 0;

  /// <O>_rho for a Hermitian sum; independent-term error propagation.
  Estimate sum_expectation(const PauliSum& obs) {
    Estimate total;
    double var = 0.0;
    for (const auto& [w, c] : obs) {
      const Estimate e = pauli_expectation(w);
      total.value += c.real() * e.value;
      var += c.real() * c.real() * e.std_error * e.std_error;
    }
    total.std_error = std::sqrt(var);
    return total;
  }
};

/// Exact expectations from a dense state.
class OracleExpectationSource final : public ExpectationSource {
 public:
  explicit OracleExpectationSource(const DenseState& state) : state_(state) {}

  Estimate pauli_expectation(const PauliString& word) override {
    return {expectation(state_, word), 0.0};
  }

 private:
  const DenseState& state_;
};

}  // namespace subspace
