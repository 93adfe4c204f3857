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

#include "subspace/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace subspace {

namespace {

using cdouble = std::complex<double>;

// Parallelizing tiny states costs more than it saves.
constexpr std::size_t kParallelThreshold = 1ULL << 12;

void check_qubit_cap(std::size_t n, std::size_t cap) {
  if (n > cap) {
    throw ResourceError("dense statevector for n=" + std::to_string(n) +
                        " exceeds the qubit cap " + std::to_string(cap));
  }
  if (n >= 63) {
    throw ResourceError("dense statevector index would overflow");
  }
}

struct WordMasks {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  int phase_power = 0;  // i^k including the i^{#Y} factor
};

// For a canonical word, W|b> = i^{#Y} * (-1)^{popcount(b & z)} |b ^ x>.
WordMasks masks_of(const PauliString& word) {
  WordMasks m;
  m.x = word.x_words().empty() ? 0 : word.x_words()[0];
  m.z = word.z_words().empty() ? 0 : word.z_words()[0];
  m.phase_power = (word.phase_power() + std::popcount(m.x & m.z)) & 3;
  return m;
}

cdouble phase_from_power(int k) {
  static const cdouble table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[k & 3];
}

cdouble word_phase_on(std::uint64_t basis, const WordMasks& m) {
  const int k = (m.phase_power + 2 * std::popcount(basis & m.z)) & 3;
  return phase_from_power(k);
}

// Diagonal rotation: amplitude b picks up exp(-i * angle * s_b), s_b = +-1.
void rotate_diagonal(std::vector<cdouble>& amps, const WordMasks& m, double angle,
                     bool parallel) {
  const std::int64_t dim = static_cast<std::int64_t>(amps.size());
  const cdouble em = std::polar(1.0, -angle);
  const cdouble ep = std::polar(1.0, angle);
  const bool sign_flip = m.phase_power == 2;  // phase is +-1 for Hermitian words
#pragma omp parallel for schedule(static) if (parallel && dim >= (std::int64_t)kParallelThreshold)
  for (std::int64_t b = 0; b < dim; ++b) {
    bool negative = std::popcount(static_cast<std::uint64_t>(b) & m.z) & 1;
    if (sign_flip) negative = !negative;
    amps[b] *= negative ? ep : em;
  }
}

// Off-diagonal rotation: pairs (c, c ^ x) mix with the cos/sin split.
void rotate_offdiagonal(std::vector<cdouble>& amps, const WordMasks& m, double angle,
                        bool parallel) {
  const std::uint64_t pivot = m.x & (~m.x + 1);  // lowest set bit
  const std::uint64_t low = pivot - 1;
  const std::int64_t half = static_cast<std::int64_t>(amps.size() / 2);
  const double c = std::cos(angle);
  const cdouble mis = cdouble(0, -std::sin(angle));
#pragma omp parallel for schedule(static) if (parallel && half >= (std::int64_t)(kParallelThreshold / 2))
  for (std::int64_t h = 0; h < half; ++h) {
    const std::uint64_t hh = static_cast<std::uint64_t>(h);
    const std::uint64_t b0 = ((hh & ~low) << 1) | (hh & low);
    const std::uint64_t b1 = b0 ^ m.x;
    const cdouble a0 = amps[b0];
    const cdouble a1 = amps[b1];
    amps[b0] = c * a0 + mis * word_phase_on(b1, m) * a1;
    amps[b1] = c * a1 + mis * word_phase_on(b0, m) * a0;
  }
}

void apply_clifford(std::vector<cdouble>& amps, const Gate& gate, bool parallel) {
  const std::int64_t dim = static_cast<std::int64_t>(amps.size());
  const bool par = parallel && dim >= static_cast<std::int64_t>(kParallelThreshold);
  switch (gate.clifford) {
    case CliffordKind::CZ: {
      const std::uint64_t mask =
          (1ULL << gate.qubits[0]) | (1ULL << gate.qubits[1]);
#pragma omp parallel for schedule(static) if (par)
      for (std::int64_t b = 0; b < dim; ++b) {
        if ((static_cast<std::uint64_t>(b) & mask) == mask) amps[b] = -amps[b];
      }
      break;
    }
    case CliffordKind::S: {
      const std::uint64_t mask = 1ULL << gate.qubits[0];
#pragma omp parallel for schedule(static) if (par)
      for (std::int64_t b = 0; b < dim; ++b) {
        if (static_cast<std::uint64_t>(b) & mask) amps[b] *= cdouble(0, 1);
      }
      break;
    }
    case CliffordKind::H: {
      const std::uint64_t mask = 1ULL << gate.qubits[0];
      const std::uint64_t low = mask - 1;
      const std::int64_t half = dim / 2;
      const double inv_sqrt2 = 0.70710678118654752440;
#pragma omp parallel for schedule(static) if (par)
      for (std::int64_t h = 0; h < half; ++h) {
        const std::uint64_t hh = static_cast<std::uint64_t>(h);
        const std::uint64_t b0 = ((hh & ~low) << 1) | (hh & low);
        const std::uint64_t b1 = b0 | mask;
        const cdouble a0 = amps[b0];
        const cdouble a1 = amps[b1];
        amps[b0] = inv_sqrt2 * (a0 + a1);
        amps[b1] = inv_sqrt2 * (a0 - a1);
      }
      break;
    }
    case CliffordKind::CX: {
      const std::uint64_t ctrl = 1ULL << gate.qubits[0];
      const std::uint64_t targ = 1ULL << gate.qubits[1];
#pragma omp parallel for schedule(static) if (par)
      for (std::int64_t b = 0; b < dim; ++b) {
        const std::uint64_t ub = static_cast<std::uint64_t>(b);
        if ((ub & ctrl) && !(ub & targ)) {
          std::swap(amps[ub], amps[ub | targ]);
        }
      }
      break;
    }
    case CliffordKind::Swap: {
      const std::uint64_t a = 1ULL << gate.qubits[0];
      const std::uint64_t b_mask = 1ULL << gate.qubits[1];
#pragma omp parallel for schedule(static) if (par)
      for (std::int64_t b = 0; b < dim; ++b) {
        const std::uint64_t ub = static_cast<std::uint64_t>(b);
        if ((ub & a) && !(ub & b_mask)) {
          std::swap(amps[ub], amps[(ub & ~a) | b_mask]);
        }
      }
      break;
    }
  }
}

}  // namespace

DenseState DenseState::zero_state(std::size_t n, std::size_t qubit_cap) {
  return basis_state(n, 0, qubit_cap);
}

DenseState DenseState::basis_state(std::size_t n, std::uint64_t bits,
                                   std::size_t qubit_cap) {
  check_qubit_cap(n, qubit_cap);
  DenseState s;
  s.n = n;
  s.amplitudes.assign(std::size_t{1} << n, cdouble(0, 0));
  s.amplitudes[bits] = cdouble(1, 0);
  return s;
}

double DenseState::norm() const {
  double acc = 0.0;
  for (const cdouble& a : amplitudes) acc += std::norm(a);
  return std::sqrt(acc);
}

void apply_word_rotation(DenseState& state, const PauliString& word, double angle,
                         Exec exec) {
  if (word.num_qubits() != state.n) {
    throw DimensionError("rotation word size does not match state");
  }
  if (!word.is_hermitian()) {
    throw ArgumentError("rotation word must be Hermitian");
  }
  const WordMasks m = masks_of(word);
  const bool parallel = exec == Exec::Parallel;
  if (m.x == 0) {
    rotate_diagonal(state.amplitudes, m, angle, parallel);
  } else {
    rotate_offdiagonal(state.amplitudes, m, angle, parallel);
  }
}

void apply_gate(DenseState& state, const Gate& gate, std::span<const double> params,
                Exec exec) {
  if (gate.is_rotation()) {
    const double theta = gate.angle(params);
    for (const auto& [w, c] : gate.generator) {
      apply_word_rotation(state, w, c.real() * theta, exec);
    }
  } else {
    apply_clifford(state.amplitudes, gate, exec == Exec::Parallel);
  }
}

void apply_circuit(DenseState& state, const Circuit& circuit,
                   std::span<const double> params, Exec exec) {
  if (circuit.n != state.n) {
    throw DimensionError("circuit size does not match state");
  }
  if (params.size() != circuit.n_params) {
    throw DimensionError("parameter vector length does not match circuit");
  }
  for (const Gate& g : circuit.gates) {
    apply_gate(state, g, params, exec);
  }
}

DenseState run_circuit(const Circuit& circuit, std::span<const double> params,
                       Exec exec, std::size_t qubit_cap) {
  DenseState state = DenseState::zero_state(circuit.n, qubit_cap);
  apply_circuit(state, circuit, params, exec);
  return state;
}

double expectation(const DenseState& state, const PauliString& word) {
  if (word.num_qubits() != state.n) {
    throw DimensionError("word size does not match state");
  }
  const WordMasks m = masks_of(word);
  const std::size_t dim = state.amplitudes.size();
  // <psi|W|psi> = sum_b conj(psi[b]) * phi(b^x) * psi[b^x].
  cdouble acc = 0.0;
  for (std::size_t b = 0; b < dim; ++b) {
    const std::uint64_t src = static_cast<std::uint64_t>(b) ^ m.x;
    acc += std::conj(state.amplitudes[b]) * word_phase_on(src, m) *
           state.amplitudes[src];
  }
  return acc.real();
}

double expectation(const DenseState& state, const PauliSum& obs) {
  double acc = 0.0;
  for (const auto& [w, c] : obs) {
    acc += c.real() * expectation(state, w);
  }
  return acc;
}

double loss(const Circuit& state_prep, const Circuit& circuit,
            std::span<const double> params, const PauliSum& obs, Exec exec) {
  if (state_prep.n != circuit.n) {
    throw DimensionError("state_prep and circuit act on different sizes");
  }
  if (obs.num_qubits() != circuit.n) {
    throw DimensionError("observable size does not match circuit");
  }
  if (!obs.is_hermitian()) {
    throw ArgumentError("loss observable must be Hermitian");
  }
  if (state_prep.n_params != 0) {
    throw ArgumentError("state_prep must be parameter-free; bind it first");
  }
  DenseState state = DenseState::zero_state(circuit.n);
  apply_circuit(state, state_prep, {}, exec);
  apply_circuit(state, circuit, params, exec);
  return expectation(state, obs);
}

Eigen::MatrixXcd reduced_density(const DenseState& state,
                                 std::span<const std::size_t> qubits,
                                 std::size_t subset_cap) {
  if (qubits.size() > subset_cap) {
    throw ResourceError("reduced density subset of " + std::to_string(qubits.size()) +
                        " qubits exceeds the cap " + std::to_string(subset_cap));
  }
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (qubits[i] >= state.n) throw ArgumentError("subset qubit out of range");
    if (i > 0 && qubits[i] <= qubits[i - 1]) {
      throw ArgumentError("subset qubits must be sorted ascending and distinct");
    }
  }
  const std::size_t k = qubits.size();
  const std::size_t sub_dim = std::size_t{1} << k;
  std::uint64_t subset_mask = 0;
  for (std::size_t q : qubits) subset_mask |= 1ULL << q;

  // Environment bit positions, ascending.
  std::vector<std::size_t> env;
  for (std::size_t q = 0; q < state.n; ++q) {
    if (!(subset_mask >> q & 1)) env.push_back(q);
  }
  const std::size_t env_dim = std::size_t{1} << env.size();

  auto scatter = [](std::uint64_t compact, const std::vector<std::size_t>& positions) {
    std::uint64_t full = 0;
    for (std::size_t i = 0; i < positions.size(); ++i) {
      if (compact >> i & 1) full |= 1ULL << positions[i];
    }
    return full;
  };

  std::vector<std::size_t> subset_positions(qubits.begin(), qubits.end());
  std::vector<std::uint64_t> sub_bits(sub_dim);
  for (std::size_t i = 0; i < sub_dim; ++i) sub_bits[i] = scatter(i, subset_positions);

  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(sub_dim, sub_dim);
  for (std::size_t e = 0; e < env_dim; ++e) {
    const std::uint64_t env_bits = scatter(e, env);
    for (std::size_t i = 0; i < sub_dim; ++i) {
      const cdouble ai = state.amplitudes[sub_bits[i] | env_bits];
      if (ai == cdouble(0, 0)) continue;
      for (std::size_t j = 0; j < sub_dim; ++j) {
        rho(i, j) += ai * std::conj(state.amplitudes[sub_bits[j] | env_bits]);
      }
    }
  }
  return rho;
}

double parameter_shift_gradient(const Circuit& state_prep, const Circuit& circuit,
                                std::span<const double> params, const PauliSum& obs,
                                std::size_t slot) {
  if (slot >= circuit.n_params) {
    throw ArgumentError("slot out of range");
  }
  const Gate* owner = nullptr;
  for (const Gate& g : circuit.gates) {
    if (g.is_rotation() && g.param_slot && *g.param_slot == slot) {
      if (owner != nullptr) {
        throw UnsupportedError("shift rule needs a slot driving exactly one gate");
      }
      owner = &g;
    } else if (!g.is_rotation() && g.param_slot && *g.param_slot == slot) {
      throw UnsupportedError("slot refers to a fixed Clifford gate");
    }
  }
  if (owner == nullptr) {
    throw UnsupportedError("slot drives no rotation gate");
  }
  if (owner->generator.size() != 1 ||
      std::abs(std::abs(owner->generator.begin()->second.real()) - 1.0) > 1e-12) {
    throw UnsupportedError(
        "shift rule needs a single-word generator with unit coefficient");
  }
  std::vector<double> shifted(params.begin(), params.end());
  const double quarter = 0.78539816339744830962;
  shifted[slot] = params[slot] + quarter;
  const double up = loss(state_prep, circuit, shifted, obs);
  shifted[slot] = params[slot] - quarter;
  const double down = loss(state_prep, circuit, shifted, obs);
  return up - down;
}

}  // namespace subspace
