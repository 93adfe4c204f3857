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

#include <cstdint>
#include <string>
#include <vector>

#include "subspace/circuit.hpp"
#include "subspace/expectation_source.hpp"
#include "subspace/pauli.hpp"

namespace subspace {

/// Pauli classical shadows from the simulated device: per shot a uniformly
/// random single-qubit basis choice in {X, Y, Z} per qubit and the measured
/// outcome bits.  Reproducible bit-for-bit from (state_prep_id, seed, shots).
struct ShadowDataset {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string state_prep_id;

  struct Shot {
    std::string basis;  // n chars over {X, Y, Z}
    std::string bits;   // n chars over {0, 1}
  };
  std::vector<Shot> shots;

  /// Header "shadow/v1 n=<n> shots=<S> seed=<seed> prep=<id>", one line per
  /// shot: basis chars, a space, outcome bits.  Bit-exact round-trip.
  std::string to_text() const;
  static ShadowDataset from_text(const std::string& text);
};

inline constexpr std::size_t kDefaultLocalityBudget = 6;
inline constexpr std::size_t kDefaultBatches = 10;

/// Runs the data-acquisition phase against the exact oracle: per shot,
/// sample a basis, rotate, and draw one outcome bitstring from the Born
/// distribution.  Shots get counter-derived seeds, so generation
/// parallelizes deterministically.
ShadowDataset acquire(const Circuit& state_prep, std::size_t n_shots,
                      std::uint64_t seed, std::string state_prep_id = "",
                      std::size_t qubit_cap = kDefaultQubitCap);

/// Median-of-means estimator for <W>_rho.  Per-shot estimate: product over
/// the support of 3 * (+-1) when the shot's basis matches the word there,
/// else 0.  std_error is the batch-mean spread / sqrt(batches).
Estimate estimate_pauli(const ShadowDataset& dataset, const PauliString& word,
                        std::size_t batches = kDefaultBatches,
                        std::size_t locality_budget = kDefaultLocalityBudget);

/// Idealized case-specific tomography: exact oracle expectations of the
/// given observables for the prepared state.
std::vector<double> direct_expectations(const Circuit& state_prep,
                                        const std::vector<PauliSum>& observables,
                                        std::size_t qubit_cap = kDefaultQubitCap);

/// Shadow sample count for the precision-limited QCNN bound:
/// ceil(300 |O|^2 / eps^2 * 2^k * (n^d + n - k + ln(2/delta))).
/// The random-Clifford estimator behind the bound is out of scope; this
/// exposes the count itself.
std::uint64_t qcnn_shadow_count(double eps, double delta, std::size_t k,
                                std::size_t d, std::size_t n, double op_norm);

/// Expectation source backed by a shadow dataset.
class ShadowExpectationSource final : public ExpectationSource {
 public:
  explicit ShadowExpectationSource(const ShadowDataset& dataset,
                                   std::size_t batches = kDefaultBatches,
                                   std::size_t locality_budget = kDefaultLocalityBudget)
      : dataset_(dataset), batches_(batches), budget_(locality_budget) {}

  Estimate pauli_expectation(const PauliString& word) override {
    return estimate_pauli(dataset_, word, batches_, budget_);
  }

 private:
  const ShadowDataset& dataset_;
  std::size_t batches_;
  std::size_t budget_;
};

}  // namespace subspace
