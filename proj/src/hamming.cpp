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

#include "subspace/hamming.hpp"

#include <bit>
#include <cmath>

namespace subspace {

namespace {

using cdouble = std::complex<double>;

// Gate classification for the sector kernels.
struct SectorGate {
  enum class Kind { ZRotation, Givens } kind;
  std::size_t i = 0, j = 0;  // qubits (j unused for Z)
  double coeff = 1.0;        // generator scale on the angle
};

SectorGate classify(const Gate& gate) {
  if (!gate.is_rotation()) {
    throw InadmissibleError("sector engine supports rotation gates only");
  }
  const PauliSum& g = gate.generator;
  if (g.size() == 1) {
    const auto& [w, c] = *g.begin();
    const auto support = w.support();
    if (support.size() == 1 && w.letter(support[0]) == 'Z') {
      return {SectorGate::Kind::ZRotation, support[0], 0, c.real()};
    }
  } else if (g.size() == 2) {
    // Expect 0.5 (X_i X_j + Y_i Y_j), possibly scaled.
    const PauliString* xx = nullptr;
    const PauliString* yy = nullptr;
    double cx = 0, cy = 0;
    for (const auto& [w, c] : g) {
      const auto support = w.support();
      if (support.size() != 2) break;
      const char a = w.letter(support[0]);
      const char b = w.letter(support[1]);
      if (a == 'X' && b == 'X') {
        xx = &w;
        cx = c.real();
      } else if (a == 'Y' && b == 'Y') {
        yy = &w;
        cy = c.real();
      }
    }
    if (xx && yy && std::abs(cx - cy) < 1e-12 && xx->support() == yy->support()) {
      const auto support = xx->support();
      return {SectorGate::Kind::Givens, support[0], support[1], 2.0 * cx};
    }
  }
  throw InadmissibleError("gate is not a Z rotation or Givens rotation");
}

}  // namespace

std::uint64_t sector_dim(std::size_t n, std::size_t k) {
  if (k > n) {
    throw ArgumentError("sector weight k must satisfy 0 <= k <= n");
  }
  std::uint64_t result = 1;
  for (std::size_t i = 0; i < std::min(k, n - k); ++i) {
    const std::uint64_t numer = n - i;
    if (result > UINT64_MAX / numer) {
      throw ResourceError("binomial coefficient overflows 64 bits");
    }
    result = result * numer / (i + 1);
  }
  return result;
}

SectorIndex::SectorIndex(std::size_t n, std::size_t k) : n_(n), k_(k) {
  dim_ = sector_dim(n, k);
  choose_.assign((n + 1) * (k + 1), 0);
  for (std::size_t a = 0; a <= n; ++a) {
    choose_[a * (k + 1) + 0] = 1;
    for (std::size_t b = 1; b <= std::min(a, k); ++b) {
      choose_[a * (k + 1) + b] =
          (a - 1 >= b ? choose_[(a - 1) * (k + 1) + b] : 0) +
          choose_[(a - 1) * (k + 1) + (b - 1)];
    }
  }
}

std::uint64_t SectorIndex::rank(std::uint64_t bits) const {
  // Colex rank: sum over set bits p_1 < p_2 < ... of C(p_t, t).
  std::uint64_t r = 0;
  std::size_t t = 0;
  while (bits) {
    const std::size_t p = static_cast<std::size_t>(std::countr_zero(bits));
    bits &= bits - 1;
    ++t;
    r += choose(p, t);
  }
  return r;
}

std::uint64_t SectorIndex::unrank(std::uint64_t index) const {
  std::uint64_t bits = 0;
  std::uint64_t rem = index;
  for (std::size_t t = k_; t >= 1; --t) {
    // Largest p with C(p, t) <= rem.
    std::size_t p = t - 1;
    while (p + 1 <= n_ - 1 && choose(p + 1, t) <= rem) ++p;
    bits |= 1ULL << p;
    rem -= choose(p, t);
  }
  return bits;
}

double SectorState::norm() const {
  double acc = 0.0;
  for (const cdouble& a : amplitudes) acc += std::norm(a);
  return std::sqrt(acc);
}

SectorState embed_state(std::size_t n, std::uint64_t bits) {
  const std::size_t k = static_cast<std::size_t>(std::popcount(bits));
  SectorState s{SectorIndex(n, k), {}};
  s.amplitudes.assign(s.index.dim(), cdouble(0, 0));
  s.amplitudes[s.index.rank(bits)] = cdouble(1, 0);
  return s;
}

SectorState embed_state(std::size_t n, std::uint64_t bits, std::size_t k) {
  if (static_cast<std::size_t>(std::popcount(bits)) != k) {
    throw ArgumentError("bitstring weight does not match the sector weight k");
  }
  return embed_state(n, bits);
}

void apply_sector_gate(SectorState& state, const Gate& gate,
                       std::span<const double> params) {
  const SectorGate sg = classify(gate);
  const double theta = gate.angle(params) * sg.coeff;
  const std::int64_t dim = static_cast<std::int64_t>(state.index.dim());

  if (sg.kind == SectorGate::Kind::ZRotation) {
    const cdouble up = std::polar(1.0, -theta);    // bit clear: Z eigenvalue +1
    const cdouble down = std::polar(1.0, +theta);  // bit set
    const std::uint64_t mask = 1ULL << sg.i;
#pragma omp parallel for schedule(static) if (dim >= 4096)
    for (std::int64_t m = 0; m < dim; ++m) {
      const std::uint64_t bits = state.index.unrank(m);
      state.amplitudes[m] *= (bits & mask) ? down : up;
    }
    return;
  }

  // Givens rotation exp(-i theta G), G = (X_i X_j + Y_i Y_j)/2 (coeff folds
  // any scaling): 2x2 block [[cos, -i sin], [-i sin, cos]] on pairs that
  // differ by moving one excitation between i and j.
  const double c = std::cos(theta);
  const cdouble mis = cdouble(0, -std::sin(theta));
  const std::uint64_t mi = 1ULL << sg.i;
  const std::uint64_t mj = 1ULL << sg.j;
#pragma omp parallel for schedule(static) if (dim >= 4096)
  for (std::int64_t m = 0; m < dim; ++m) {
    const std::uint64_t bits = state.index.unrank(m);
    if ((bits & mi) && !(bits & mj)) {
      const std::uint64_t partner = (bits & ~mi) | mj;
      const std::uint64_t pm = state.index.rank(partner);
      const cdouble a = state.amplitudes[m];
      const cdouble b = state.amplitudes[pm];
      state.amplitudes[m] = c * a + mis * b;
      state.amplitudes[pm] = mis * a + c * b;
    }
  }
}

void apply_sector_circuit(SectorState& state, const Circuit& circuit,
                          std::span<const double> params) {
  if (circuit.n != state.index.n()) {
    throw DimensionError("circuit size does not match sector state");
  }
  for (const Gate& g : circuit.gates) apply_sector_gate(state, g, params);
}

double sector_expectation(const SectorState& state, const PauliSum& obs) {
  if (obs.num_qubits() != state.index.n()) {
    throw DimensionError("observable size does not match sector state");
  }
  const std::size_t dim = state.index.dim();
  double total = 0.0;
  for (const auto& [w, coeff] : obs) {
    const std::uint64_t x = w.x_words().empty() ? 0 : w.x_words()[0];
    const std::uint64_t z = w.z_words().empty() ? 0 : w.z_words()[0];
    const int base = (w.phase_power() + std::popcount(x & z)) & 3;
    static const cdouble phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    // <psi|W|psi> = sum_s conj(psi[s ^ x]) phi(s) psi[s], restricted to
    // pairs staying in the sector.
    cdouble acc = 0.0;
    for (std::size_t m = 0; m < dim; ++m) {
      const std::uint64_t s = state.index.unrank(m);
      const std::uint64_t t = s ^ x;
      if (std::popcount(t) != std::popcount(s)) continue;  // escapes sector
      const int k = (base + 2 * std::popcount(s & z)) & 3;
      acc += std::conj(state.amplitudes[state.index.rank(t)]) * phases[k] *
             state.amplitudes[m];
    }
    total += (coeff * acc).real();
  }
  return total;
}

double sector_loss(std::uint64_t prep_bits, const Circuit& circuit,
                   std::span<const double> params, const PauliSum& obs) {
  if (!obs.is_hermitian()) {
    throw InadmissibleError("observable must be Hermitian");
  }
  PauliSum charge(circuit.n);
  for (std::size_t q = 0; q < circuit.n; ++q) {
    charge.add(PauliString::single(circuit.n, q, 'Z'), 1.0);
  }
  if (!commutator(obs, charge).empty()) {
    throw InadmissibleError("observable does not conserve Hamming weight");
  }
  SectorState state = embed_state(circuit.n, prep_bits);
  apply_sector_circuit(state, circuit, params);
  return sector_expectation(state, obs);
}

}  // namespace subspace
