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

#include <optional>
#include <span>
#include <utility>

#include "subspace/circuit.hpp"
#include "subspace/expectation_source.hpp"
#include "subspace/pauli.hpp"

namespace subspace {

/// Truncation schedule for Heisenberg back-propagation.  Applied after every
/// gate: weight cut first, then coefficient cut, then top-|max_terms| keep
/// (ties broken by larger |coefficient|, then lexicographic word order).
/// discard_log accumulates the squared-coefficient (l2) mass of everything a
/// cut removed; with all limits unlimited it stays exactly 0.
struct TruncationPolicy {
  std::optional<std::size_t> max_weight;
  double min_coeff = 0.0;
  std::optional<std::size_t> max_terms;
  double discard_log = 0.0;

  static TruncationPolicy unlimited() { return {}; }
  static TruncationPolicy weight_cut(std::size_t k) {
    TruncationPolicy p;
    p.max_weight = k;
    return p;
  }
};

/// Heisenberg back-propagation O -> U^dag O U in the Pauli basis, processing
/// gates in reverse.  A rotation exp(-i a P) maps an anticommuting term Q to
/// cos(2a) Q + sin(2a) (i P Q); commuting terms pass through.  Fixed
/// Clifford gates permute words.  The policy's discard_log is reset at entry
/// and accumulates this run's truncated l2 mass.
PauliSum backpropagate(const PauliSum& obs, const Circuit& circuit,
                       std::span<const double> params, TruncationPolicy& policy);

/// Heuristic error indicator: the accumulated discarded l2 mass of the last
/// run with this policy.  Not a rigorous bound.
double truncation_error_bound(const TruncationPolicy& policy);

/// Contracts a propagated observable with state expectations:
/// sum_P alpha_P <P>_rho, with statistical error propagated from the source.
/// Throws UnanswerableWordError listing the offenders if the source cannot
/// answer some word.
Estimate loss_from_expectations(const PauliSum& propagated,
                                ExpectationSource& source);

/// Splits by weight: terms with weight <= k, and everything heavier.  The
/// two parts reconstruct the input exactly.
std::pair<PauliSum, PauliSum> split_observable(const PauliSum& obs, std::size_t k);

/// C^dag W C for a fixed Clifford gate; exact word-to-word map.
PauliString conjugate_by_clifford(const PauliString& word, const Gate& gate);

}  // namespace subspace
