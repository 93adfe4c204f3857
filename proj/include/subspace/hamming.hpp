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

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "subspace/circuit.hpp"
#include "subspace/pauli.hpp"

namespace subspace {

/// C(n, k) with overflow checking.
std::uint64_t sector_dim(std::size_t n, std::size_t k);

/// Colexicographic rank/unrank between weight-k bitstrings and
/// 0 .. C(n,k)-1, via precomputed binomial tables.
class SectorIndex {
 public:
  SectorIndex(std::size_t n, std::size_t k);

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::uint64_t dim() const { return dim_; }

  std::uint64_t rank(std::uint64_t bits) const;
  std::uint64_t unrank(std::uint64_t index) const;

 private:
  std::size_t n_, k_;
  std::uint64_t dim_;
  std::vector<std::uint64_t> choose_;  // (n+1) x (k+1) row-major

  std::uint64_t choose(std::size_t a, std::size_t b) const {
    return b <= k_ ? choose_[a * (k_ + 1) + b] : 0;
  }
};

/// State in the fixed Hamming-weight-k sector: C(n,k) amplitudes in colex
/// order of the occupied-bit patterns.
struct SectorState {
  SectorIndex index;
  std::vector<std::complex<double>> amplitudes;

  double norm() const;
};

/// Basis state |bits>; the sector weight is taken from the bitstring.
SectorState embed_state(std::size_t n, std::uint64_t bits);

/// As above but checks weight(bits) == k.
SectorState embed_state(std::size_t n, std::uint64_t bits, std::size_t k);

/// Z rotations and Givens rotations (generator (X_i X_j + Y_i Y_j)/2) acting
/// inside the sector.  Other gates are inadmissible.
void apply_sector_gate(SectorState& state, const Gate& gate,
                       std::span<const double> params);

void apply_sector_circuit(SectorState& state, const Circuit& circuit,
                          std::span<const double> params);

/// <O> in the sector; Pauli words map weight-k strings to weight-k strings
/// only when compatible, incompatible words contribute zero.
double sector_expectation(const SectorState& state, const PauliSum& obs);

/// Full U(1) loss: embeds |prep_bits>, evolves through the circuit in the
/// sector, and evaluates a Hamming-weight-conserving observable (must
/// commute with sum_j Z_j).
double sector_loss(std::uint64_t prep_bits, const Circuit& circuit,
                   std::span<const double> params, const PauliSum& obs);

}  // namespace subspace
