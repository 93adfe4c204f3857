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
#include <span>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "subspace/circuit.hpp"
#include "subspace/expectation_source.hpp"
#include "subspace/pauli.hpp"

namespace subspace {

/// Hermitian product of Majorana operators: i^{eta(eta-1)/2} c_{i1}...c_{i_eta}
/// with strictly increasing 1-based indices in {1, ..., 2n}.
struct MajoranaMonomial {
  std::vector<std::size_t> indices;

  std::size_t degree() const { return indices.size(); }
  /// Indices packed as a bitmask (index m -> bit m-1).
  std::uint64_t mask() const;
};

/// Jordan-Wigner image with the Hermitizing phase folded in:
/// c_{2j-1} = Z_1...Z_{j-1} X_j and c_{2j} = Z_1...Z_{j-1} Y_j.
/// The returned word carries phase +1 or -1.
PauliString majorana_to_pauli(const MajoranaMonomial& m, std::size_t n);

/// Inverse of the Jordan-Wigner map: every Pauli word is (+-1) times exactly
/// one Majorana monomial.  Returns the monomial and the sign s such that
/// word = s * M (for a canonical word).
std::pair<MajoranaMonomial, double> pauli_to_majorana(const PauliString& word);

/// Majorana degree of a word (the eta of its module B_eta).
std::size_t majorana_degree(const PauliString& word);

/// C(2n, eta), overflow-checked.
std::uint64_t module_dim(std::size_t n, std::size_t eta);

/// All degree-eta monomials in colex order of their masks.
std::vector<MajoranaMonomial> monomial_basis(std::size_t n, std::size_t eta);

/// Composes per-gate Givens rotations on Majorana pairs for a matchgate
/// circuit (generators Z_j or X_j X_{j+1} only):
/// U^dag c_a U = sum_b R[a][b] c_b, R in SO(2n).
Eigen::MatrixXd circuit_rotation(const Circuit& circuit, std::span<const double> params);

inline constexpr std::uint64_t kDefaultModuleCap = 1000000;

/// Heisenberg transport through the eta-th compound of R: the coefficient
/// carried from source subset S to target subset T is det(R[S, T]).
/// Contracts with the state correlations <M_T>_rho (map keyed by mask;
/// missing entries are zero).
double module_loss(const Circuit& circuit, std::span<const double> params,
                   const std::vector<std::pair<MajoranaMonomial, double>>& obs_monomials,
                   const std::unordered_map<std::uint64_t, double>& state_correlations,
                   std::uint64_t module_cap = kDefaultModuleCap);

/// Queries <M_T> for every degree-eta monomial from an expectation source
/// (the "expectation value of Pauli operators" acquisition step).
std::unordered_map<std::uint64_t, double> acquire_correlations(
    std::size_t n, std::size_t eta, ExpectationSource& source);

/// Expands a Hermitian Pauli sum into weighted Majorana monomials, grouped
/// as a single list; throws if the words mix degrees when require_fixed_eta.
std::vector<std::pair<MajoranaMonomial, double>> pauli_to_monomials(
    const PauliSum& obs, bool require_fixed_eta = true);

}  // namespace subspace
