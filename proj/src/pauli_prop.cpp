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

#include "subspace/pauli_prop.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace subspace {

namespace {

// Image of a single-qubit letter under C^dag . C, as a full-width word.
PauliString clifford_letter_image(char letter, const Gate& gate, std::size_t n,
                                  std::size_t position) {
  const std::size_t q = gate.qubits[position];
  PauliString img(n);
  auto with_sign = [&](int phase_power) {
    img.set_phase_power(phase_power);
    return img;
  };
  switch (gate.clifford) {
    case CliffordKind::H:
      // X <-> Z, Y -> -Y.
      if (letter == 'X') img.set_letter(q, 'Z');
      if (letter == 'Z') img.set_letter(q, 'X');
      if (letter == 'Y') {
        img.set_letter(q, 'Y');
        return with_sign(2);
      }
      return img;
    case CliffordKind::S:
      // S^dag X S = -Y, S^dag Y S = X, Z fixed.
      if (letter == 'X') {
        img.set_letter(q, 'Y');
        return with_sign(2);
      }
      if (letter == 'Y') img.set_letter(q, 'X');
      if (letter == 'Z') img.set_letter(q, 'Z');
      return img;
    case CliffordKind::CZ: {
      const std::size_t other = gate.qubits[1 - position];
      img.set_letter(q, letter);
      if (letter == 'X' || letter == 'Y') img.set_letter(other, 'Z');
      return img;
    }
    case CliffordKind::CX: {
      const std::size_t ctrl = gate.qubits[0];
      const std::size_t targ = gate.qubits[1];
      img.set_letter(q, letter);
      if (position == 0) {  // control
        if (letter == 'X' || letter == 'Y') img.set_letter(targ, 'X');
      } else {  // target
        if (letter == 'Z' || letter == 'Y') img.set_letter(ctrl, 'Z');
      }
      return img;
    }
    case CliffordKind::Swap: {
      const std::size_t other = gate.qubits[1 - position];
      img.set_letter(other, letter);
      return img;
    }
  }
  throw ArgumentError("unknown Clifford kind");
}

void apply_policy(PauliSum& obs, TruncationPolicy& policy) {
  if (policy.max_weight) {
    std::vector<PauliString> cut;
    for (const auto& [w, c] : obs) {
      if (w.weight() > *policy.max_weight) cut.push_back(w);
    }
    for (const PauliString& w : cut) {
      policy.discard_log += std::norm(obs.coeff(w));
      obs.add(w, -obs.coeff(w));
    }
  }
  if (policy.min_coeff > 0.0) {
    std::vector<PauliString> cut;
    for (const auto& [w, c] : obs) {
      if (std::abs(c) < policy.min_coeff) cut.push_back(w);
    }
    for (const PauliString& w : cut) {
      policy.discard_log += std::norm(obs.coeff(w));
      obs.add(w, -obs.coeff(w));
    }
  }
  if (policy.max_terms && obs.size() > *policy.max_terms) {
    std::vector<std::pair<PauliString, Complex>> terms(obs.begin(), obs.end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
      const double ma = std::abs(a.second), mb = std::abs(b.second);
      if (ma != mb) return ma > mb;
      return a.first < b.first;
    });
    PauliSum kept(obs.num_qubits());
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (i < *policy.max_terms) {
        kept.add(terms[i].first, terms[i].second);
      } else {
        policy.discard_log += std::norm(terms[i].second);
      }
    }
    obs = std::move(kept);
  }
}

// One word rotation exp(-i a P), Heisenberg direction.
PauliSum rotate_terms(const PauliSum& obs, const PauliString& p, double angle) {
  const double c2 = std::cos(2.0 * angle);
  const double s2 = std::sin(2.0 * angle);
  PauliSum next(obs.num_qubits());
  for (const auto& [q, coeff] : obs) {
    if (p.commutes_with(q)) {
      next.add(q, coeff);
      continue;
    }
    next.add(q, coeff * c2);
    const PauliString pq = p * q;
    next.add(pq.canonical(), coeff * s2 * Complex(0, 1) * pq.phase());
  }
  return next;
}

}  // namespace

PauliString conjugate_by_clifford(const PauliString& word, const Gate& gate) {
  if (gate.is_rotation()) {
    throw ArgumentError("conjugate_by_clifford expects a fixed Clifford gate");
  }
  // Split off the letters on the gate targets, map them, and recombine; the
  // group product takes care of all phases.
  PauliString base = word;
  PauliString img(word.num_qubits());
  img.set_phase_power(0);
  bool any = false;
  for (std::size_t pos = 0; pos < gate.qubits.size(); ++pos) {
    const char letter = word.letter(gate.qubits[pos]);
    if (letter == 'I') continue;
    base.set_letter(gate.qubits[pos], 'I');
    img = img * clifford_letter_image(letter, gate, word.num_qubits(), pos);
    any = true;
  }
  if (!any) return word;
  return base * img;
}

PauliSum backpropagate(const PauliSum& obs, const Circuit& circuit,
                       std::span<const double> params, TruncationPolicy& policy) {
  if (obs.num_qubits() != circuit.n) {
    throw DimensionError("observable size does not match circuit");
  }
  if (params.size() != circuit.n_params) {
    throw DimensionError("parameter vector length does not match circuit");
  }
  policy.discard_log = 0.0;
  PauliSum current = obs;
  for (std::size_t gi = circuit.gates.size(); gi-- > 0;) {
    const Gate& gate = circuit.gates[gi];
    if (gate.is_rotation()) {
      const double theta = gate.angle(params);
      for (const auto& [w, c] : gate.generator) {
        current = rotate_terms(current, w, c.real() * theta);
      }
    } else {
      PauliSum mapped(current.num_qubits());
      for (const auto& [w, c] : current) {
        const PauliString img = conjugate_by_clifford(w, gate);
        mapped.add(img.canonical(), c * img.phase());
      }
      current = std::move(mapped);
    }
    apply_policy(current, policy);
  }
  return current;
}

double truncation_error_bound(const TruncationPolicy& policy) {
  return policy.discard_log;
}

Estimate loss_from_expectations(const PauliSum& propagated,
                                ExpectationSource& source) {
  Estimate total;
  double var = 0.0;
  std::string offenders;
  for (const auto& [w, c] : propagated) {
    try {
      const Estimate e = source.pauli_expectation(w);
      total.value += c.real() * e.value;
      var += c.real() * c.real() * e.std_error * e.std_error;
    } catch (const UnanswerableWordError&) {
      if (!offenders.empty()) offenders += ", ";
      offenders += w.to_string();
    }
  }
  if (!offenders.empty()) {
    throw UnanswerableWordError("expectation source cannot answer: " + offenders,
                                offenders);
  }
  total.std_error = std::sqrt(var);
  return total;
}

std::pair<PauliSum, PauliSum> split_observable(const PauliSum& obs, std::size_t k) {
  PauliSum low(obs.num_qubits());
  PauliSum high(obs.num_qubits());
  for (const auto& [w, c] : obs) {
    (w.weight() <= k ? low : high).add(w, c);
  }
  return {std::move(low), std::move(high)};
}

}  // namespace subspace
