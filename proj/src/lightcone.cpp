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

#include "subspace/lightcone.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <unordered_map>

#include "subspace/pauli_prop.hpp"

namespace subspace {

namespace {

using cdouble = std::complex<double>;

// Local relabeling cone qubit -> bit position in the reduced space.
std::unordered_map<std::size_t, std::size_t> local_index(
    const std::vector<std::size_t>& qubit_set) {
  std::unordered_map<std::size_t, std::size_t> map;
  for (std::size_t i = 0; i < qubit_set.size(); ++i) map[qubit_set[i]] = i;
  return map;
}

PauliString relabel(const PauliString& word,
                    const std::unordered_map<std::size_t, std::size_t>& to_local,
                    std::size_t local_n) {
  PauliString out(local_n);
  out.set_phase_power(word.phase_power());
  for (std::size_t q = 0; q < word.num_qubits(); ++q) {
    const char l = word.letter(q);
    if (l == 'I') continue;
    const auto it = to_local.find(q);
    if (it == to_local.end()) {
      throw ConsistencyError("operator support escapes the light cone");
    }
    out.set_letter(it->second, l);
  }
  return out;
}

Eigen::MatrixXcd word_matrix_local(const PauliString& word) {
  const std::size_t n = word.num_qubits();
  const Eigen::Index dim = Eigen::Index(1) << n;
  std::uint64_t x = word.x_words().empty() ? 0 : word.x_words()[0];
  std::uint64_t z = word.z_words().empty() ? 0 : word.z_words()[0];
  const int base = (word.phase_power() + std::popcount(x & z)) & 3;
  static const cdouble phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const int k = (base + 2 * std::popcount(static_cast<std::uint64_t>(b) & z)) & 3;
    m(static_cast<Eigen::Index>(b ^ static_cast<Eigen::Index>(x)), b) = phases[k];
  }
  return m;
}

// O <- u^dag O u for u = exp(-i a W):
// cos^2 O + sin^2 W O W + i sin cos (W O - O W).
void conjugate_word_rotation(Eigen::MatrixXcd& obs, const Eigen::MatrixXcd& w,
                             double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  const Eigen::MatrixXcd wo = w * obs;
  const Eigen::MatrixXcd ow = obs * w;
  obs = c * c * obs + s * s * (wo * w) + cdouble(0, 1) * s * c * (wo - ow);
}

Eigen::MatrixXcd clifford_matrix_local(
    const Gate& gate, const std::unordered_map<std::size_t, std::size_t>& to_local,
    std::size_t local_n) {
  const Eigen::Index dim = Eigen::Index(1) << local_n;
  std::vector<std::size_t> q;
  for (std::size_t full : gate.qubits) q.push_back(to_local.at(full));
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const auto bit = [&](std::size_t k) { return (b >> q[k]) & 1; };
    switch (gate.clifford) {
      case CliffordKind::CZ:
        m(b, b) = (bit(0) && bit(1)) ? -1.0 : 1.0;
        break;
      case CliffordKind::S:
        m(b, b) = bit(0) ? cdouble(0, 1) : cdouble(1, 0);
        break;
      case CliffordKind::H: {
        const double r = 0.70710678118654752440;
        m(b & ~(Eigen::Index(1) << q[0]), b) = r;
        m(b | (Eigen::Index(1) << q[0]), b) = bit(0) ? -r : r;
        break;
      }
      case CliffordKind::CX:
        m(bit(0) ? b ^ (Eigen::Index(1) << q[1]) : b, b) = 1.0;
        break;
      case CliffordKind::Swap: {
        Eigen::Index out = b;
        if (bit(0) != bit(1)) {
          out ^= (Eigen::Index(1) << q[0]) | (Eigen::Index(1) << q[1]);
        }
        m(out, b) = 1.0;
        break;
      }
    }
  }
  return m;
}

}  // namespace

LightCone backward_cone(const Circuit& circuit, std::span<const std::size_t> support) {
  std::set<std::size_t> cone(support.begin(), support.end());
  std::vector<std::size_t> kept_indices;
  for (std::size_t gi = circuit.gates.size(); gi-- > 0;) {
    const Gate& g = circuit.gates[gi];
    bool overlaps = false;
    for (std::size_t q : g.qubits) overlaps |= cone.count(q) > 0;
    if (!overlaps) continue;
    for (std::size_t q : g.qubits) cone.insert(q);
    kept_indices.push_back(gi);
  }
  std::reverse(kept_indices.begin(), kept_indices.end());

  LightCone out;
  out.qubit_set.assign(cone.begin(), cone.end());
  out.kept = Circuit(circuit.n, circuit.n_params);
  for (std::size_t gi : kept_indices) out.kept.append(circuit.gates[gi]);
  return out;
}

double reduced_loss(const LightCone& cone, const Eigen::MatrixXcd& rho_reduced,
                    const PauliSum& obs, std::span<const double> params,
                    std::size_t cone_cap) {
  const std::size_t c = cone.qubit_set.size();
  if (c > cone_cap) {
    throw ResourceError("light cone of " + std::to_string(c) +
                        " qubits exceeds the cap " + std::to_string(cone_cap));
  }
  const Eigen::Index dim = Eigen::Index(1) << c;
  if (rho_reduced.rows() != dim || rho_reduced.cols() != dim) {
    throw DimensionError("reduced state dimension does not match the cone");
  }
  if ((rho_reduced - rho_reduced.adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
    throw ArgumentError("reduced state must be Hermitian");
  }
  if (std::abs(rho_reduced.trace() - cdouble(1, 0)) > 1e-9) {
    throw ArgumentError("reduced state must have unit trace");
  }
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_reduced);
    if (es.eigenvalues().minCoeff() < -1e-8) {
      throw ArgumentError("reduced state must be positive semidefinite");
    }
  }
  if (!obs.is_hermitian()) {
    throw ArgumentError("observable must be Hermitian");
  }

  const auto to_local = local_index(cone.qubit_set);

  // Observable as a dense matrix on the cone.
  Eigen::MatrixXcd o = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [w, coeff] : obs) {
    o += coeff * word_matrix_local(relabel(w, to_local, c));
  }

  // Heisenberg evolution through the kept gates, last gate first.
  for (std::size_t gi = cone.kept.gates.size(); gi-- > 0;) {
    const Gate& g = cone.kept.gates[gi];
    if (g.is_rotation()) {
      const double theta = g.angle(params);
      for (const auto& [w, coeff] : g.generator) {
        conjugate_word_rotation(o, word_matrix_local(relabel(w, to_local, c)),
                                coeff.real() * theta);
      }
    } else {
      const Eigen::MatrixXcd u = clifford_matrix_local(g, to_local, c);
      o = u.adjoint() * o * u;
    }
  }
  return (rho_reduced * o).trace().real();
}

Estimate reduced_loss_from_shadows(const LightCone& cone, const ShadowDataset& dataset,
                                   const PauliSum& obs, std::span<const double> params,
                                   std::size_t batches, std::size_t locality_budget) {
  if (cone.qubit_set.size() > locality_budget) {
    throw ResourceError("cone size exceeds the shadow locality budget");
  }
  // Exact Heisenberg expansion of O(theta) on the cone (words stay inside
  // the cone by construction), then per-word shadow estimates.
  TruncationPolicy unlimited = TruncationPolicy::unlimited();
  const PauliSum propagated = backpropagate(obs, cone.kept, params, unlimited);
  ShadowExpectationSource source(dataset, batches, locality_budget);
  return loss_from_expectations(propagated, source);
}

}  // namespace subspace
