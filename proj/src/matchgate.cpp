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

#include "subspace/matchgate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace subspace {

namespace {

// Single Majorana as a Pauli word: c_{2j-1} -> Z...Z X at qubit j-1,
// c_{2j} -> Z...Z Y at qubit j-1 (1-based Majorana indices).
PauliString single_majorana(std::size_t index, std::size_t n) {
  if (index < 1 || index > 2 * n) {
    throw ArgumentError("Majorana index " + std::to_string(index) +
                        " out of range for n=" + std::to_string(n));
  }
  const std::size_t qubit = (index - 1) / 2;
  PauliString w(n);
  for (std::size_t q = 0; q < qubit; ++q) w.set_letter(q, 'Z');
  w.set_letter(qubit, index % 2 == 1 ? 'X' : 'Y');
  return w;
}

// The pair (a, b) of Majorana modes a matchgate generator rotates.
struct GeneratorModes {
  std::size_t a, b;  // 1-based
  double coeff;
};

GeneratorModes matchgate_modes(const Gate& gate, std::size_t gate_index) {
  if (!gate.is_rotation() || gate.generator.size() != 1) {
    throw InadmissibleError("matchgate circuits allow single-word rotations only",
                            gate_index);
  }
  const auto& [w, c] = *gate.generator.begin();
  const auto support = w.support();
  if (support.size() == 1 && w.letter(support[0]) == 'Z') {
    const std::size_t j = support[0] + 1;  // 1-based qubit
    return {2 * j - 1, 2 * j, c.real()};
  }
  if (support.size() == 2 && support[1] == support[0] + 1 &&
      w.letter(support[0]) == 'X' && w.letter(support[1]) == 'X') {
    const std::size_t j = support[0] + 1;
    return {2 * j, 2 * j + 1, c.real()};
  }
  throw InadmissibleError("generator " + w.to_string() +
                              " is not Z_j or X_j X_{j+1}",
                          gate_index);
}

}  // namespace

std::uint64_t MajoranaMonomial::mask() const {
  std::uint64_t m = 0;
  for (std::size_t idx : indices) m |= 1ULL << (idx - 1);
  return m;
}

PauliString majorana_to_pauli(const MajoranaMonomial& m, std::size_t n) {
  for (std::size_t i = 1; i < m.indices.size(); ++i) {
    if (m.indices[i] <= m.indices[i - 1]) {
      throw ArgumentError("Majorana indices must be strictly increasing");
    }
  }
  PauliString acc = PauliString::identity(n);
  for (std::size_t idx : m.indices) {
    acc = acc * single_majorana(idx, n);
  }
  // Hermitizing phase i^{eta(eta-1)/2}.
  const std::size_t eta = m.indices.size();
  acc.set_phase_power(static_cast<int>((acc.phase_power() + eta * (eta - 1) / 2) & 3));
  if (!acc.is_hermitian()) {
    throw ConsistencyError("Majorana monomial image failed to be Hermitian");
  }
  return acc;
}

std::pair<MajoranaMonomial, double> pauli_to_majorana(const PauliString& word) {
  // Walk qubits from the top: the letter at qubit q is (local Majorana
  // content at q) times Z^{parity of modes above q}.
  const std::size_t n = word.num_qubits();
  MajoranaMonomial monomial;
  std::vector<std::size_t> reversed;
  std::size_t above = 0;  // modes at qubits > q, mod 2 relevant
  for (std::size_t q = n; q-- > 0;) {
    char letter = word.letter(q);
    if (above & 1) {
      // Strip the Z string coming from higher modes.
      switch (letter) {
        case 'I': letter = 'Z'; break;
        case 'Z': letter = 'I'; break;
        case 'X': letter = 'Y'; break;
        case 'Y': letter = 'X'; break;
      }
    }
    switch (letter) {
      case 'I':
        break;
      case 'X':
        reversed.push_back(2 * (q + 1) - 1);
        above += 1;
        break;
      case 'Y':
        reversed.push_back(2 * (q + 1));
        above += 1;
        break;
      case 'Z':
        reversed.push_back(2 * (q + 1));
        reversed.push_back(2 * (q + 1) - 1);
        above += 2;
        break;
    }
  }
  monomial.indices.assign(reversed.rbegin(), reversed.rend());
  const PauliString image = majorana_to_pauli(monomial, n);
  if (image.canonical() != word.canonical()) {
    throw ConsistencyError("Jordan-Wigner inversion failed for " + word.to_string());
  }
  // word = s * M with s read off by comparing phases.
  const int diff = (word.phase_power() - image.phase_power()) & 3;
  if (diff != 0 && diff != 2) {
    throw ConsistencyError("non-Hermitian phase relation in Jordan-Wigner inversion");
  }
  return {std::move(monomial), diff == 0 ? 1.0 : -1.0};
}

std::size_t majorana_degree(const PauliString& word) {
  std::size_t degree = 0;
  bool parity = false;  // odd number of modes above the current qubit
  for (std::size_t q = word.num_qubits(); q-- > 0;) {
    char letter = word.letter(q);
    if (parity) {
      letter = letter == 'I' ? 'Z' : letter == 'Z' ? 'I' : letter == 'X' ? 'Y' : 'X';
    }
    if (letter == 'X' || letter == 'Y') {
      degree += 1;
      parity = !parity;
    } else if (letter == 'Z') {
      degree += 2;
    }
  }
  return degree;
}

std::uint64_t module_dim(std::size_t n, std::size_t eta) {
  if (eta > 2 * n) {
    throw ArgumentError("Majorana degree eta must satisfy 0 <= eta <= 2n");
  }
  // C(2n, eta) via the sector helper's overflow-checked arithmetic.
  std::uint64_t result = 1;
  const std::size_t m = 2 * n;
  for (std::size_t i = 0; i < std::min(eta, m - eta); ++i) {
    const std::uint64_t numer = m - i;
    if (result > UINT64_MAX / numer) {
      throw ResourceError("module dimension overflows 64 bits");
    }
    result = result * numer / (i + 1);
  }
  return result;
}

std::vector<MajoranaMonomial> monomial_basis(std::size_t n, std::size_t eta) {
  std::vector<MajoranaMonomial> out;
  if (eta == 0) {
    out.push_back({});
    return out;
  }
  if (eta > 2 * n) return out;
  std::vector<std::size_t> current(eta);
  for (std::size_t i = 0; i < eta; ++i) current[i] = i + 1;
  while (true) {
    out.push_back({current});
    // Colex successor: bump the first index with headroom, reset the ones
    // below it.
    std::size_t i = 0;
    while (i + 1 < eta && current[i] + 1 == current[i + 1]) ++i;
    if (current[i] + 1 > 2 * n) break;
    current[i] += 1;
    for (std::size_t j = 0; j < i; ++j) current[j] = j + 1;
  }
  return out;
}

Eigen::MatrixXd circuit_rotation(const Circuit& circuit, std::span<const double> params) {
  const std::size_t modes = 2 * circuit.n;
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(modes, modes);
  for (std::size_t gi = 0; gi < circuit.gates.size(); ++gi) {
    const GeneratorModes gm = matchgate_modes(circuit.gates[gi], gi);
    const double angle = 2.0 * gm.coeff * circuit.gates[gi].angle(params);
    // Left-multiply the Givens block: rows (a, b) rotate.
    const std::size_t a = gm.a - 1, b = gm.b - 1;
    const double c = std::cos(angle), s = std::sin(angle);
    for (std::size_t col = 0; col < modes; ++col) {
      const double ra = r(a, col), rb = r(b, col);
      r(a, col) = c * ra - s * rb;
      r(b, col) = s * ra + c * rb;
    }
  }
  return r;
}

double module_loss(const Circuit& circuit, std::span<const double> params,
                   const std::vector<std::pair<MajoranaMonomial, double>>& obs_monomials,
                   const std::unordered_map<std::uint64_t, double>& state_correlations,
                   std::uint64_t module_cap) {
  if (obs_monomials.empty()) return 0.0;
  const std::size_t eta = obs_monomials.front().first.degree();
  for (const auto& [m, w] : obs_monomials) {
    if (m.degree() != eta) {
      throw ArgumentError("module_loss requires monomials of one fixed degree");
    }
  }
  if (module_dim(circuit.n, eta) > module_cap) {
    throw ResourceError("module dimension C(2n, eta) exceeds the cap");
  }
  const Eigen::MatrixXd r = circuit_rotation(circuit, params);
  const std::vector<MajoranaMonomial> targets = monomial_basis(circuit.n, eta);

  // Per-target contributions first, summed in index order afterwards, so the
  // result does not depend on thread scheduling.
  std::vector<double> contributions(targets.size(), 0.0);
#pragma omp parallel for schedule(static)
  for (std::size_t ti = 0; ti < targets.size(); ++ti) {
    const auto corr = state_correlations.find(targets[ti].mask());
    if (corr == state_correlations.end() || corr->second == 0.0) continue;
    Eigen::MatrixXd minor(eta, eta);
    double contribution = 0.0;
    for (const auto& [source, weight] : obs_monomials) {
      for (std::size_t row = 0; row < eta; ++row) {
        for (std::size_t col = 0; col < eta; ++col) {
          minor(row, col) = r(source.indices[row] - 1, targets[ti].indices[col] - 1);
        }
      }
      contribution += weight * minor.determinant();
    }
    contributions[ti] = contribution * corr->second;
  }
  double total = 0.0;
  for (double c : contributions) total += c;
  return total;
}

std::unordered_map<std::uint64_t, double> acquire_correlations(
    std::size_t n, std::size_t eta, ExpectationSource& source) {
  std::unordered_map<std::uint64_t, double> out;
  for (const MajoranaMonomial& m : monomial_basis(n, eta)) {
    const PauliString word = majorana_to_pauli(m, n);
    const double sign = word.phase_power() == 2 ? -1.0 : 1.0;
    const double value = source.pauli_expectation(word.canonical()).value;
    out[m.mask()] = sign * value;
  }
  return out;
}

std::vector<std::pair<MajoranaMonomial, double>> pauli_to_monomials(
    const PauliSum& obs, bool require_fixed_eta) {
  if (!obs.is_hermitian()) {
    throw ArgumentError("observable must be Hermitian");
  }
  std::vector<std::pair<MajoranaMonomial, double>> out;
  std::size_t eta = 0;
  bool first = true;
  for (const auto& [w, c] : obs) {
    auto [monomial, sign] = pauli_to_majorana(w);
    if (first) {
      eta = monomial.degree();
      first = false;
    } else if (require_fixed_eta && monomial.degree() != eta) {
      throw ArgumentError("observable mixes Majorana degrees " +
                          std::to_string(eta) + " and " +
                          std::to_string(monomial.degree()));
    }
    out.emplace_back(std::move(monomial), sign * c.real());
  }
  return out;
}

}  // namespace subspace
