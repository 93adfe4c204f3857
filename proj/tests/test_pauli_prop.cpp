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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "subspace/pauli_prop.hpp"
#include "subspace/rng.hpp"
#include "subspace/shadows.hpp"
#include "subspace/statevector.hpp"
#include "support/dense_oracle.hpp"

using namespace subspace;

namespace {

std::vector<double> random_params(Rng& rng, std::size_t count) {
  std::vector<double> p(count);
  for (double& x : p) x = rng.uniform(0.0, 6.283185307179586);
  return p;
}

Circuit mixed_circuit(std::size_t n, Rng& rng, std::size_t rotations) {
  Circuit c(n, rotations);
  static const char letters[3] = {'X', 'Y', 'Z'};
  for (std::size_t g = 0; g < rotations; ++g) {
    PauliString w(n);
    w.set_letter(rng.uniform_index(n), letters[rng.uniform_index(3)]);
    if (rng.uniform() < 0.5) {
      std::size_t q = rng.uniform_index(n);
      if (w.letter(q) != 'I') q = (q + 1) % n;
      w.set_letter(q, letters[rng.uniform_index(3)]);
    }
    c.append(Gate::rotation(PauliSum::from_word(w), g, 0));
    if (g % 3 == 1) {
      const std::size_t a = rng.uniform_index(n);
      const std::size_t b = (a + 1) % n;
      c.append(Gate::fixed_clifford(CliffordKind::CZ, {a, b}, 0));
    }
  }
  return c;
}

}  // namespace

TEST_CASE("identity circuit leaves the observable unchanged") {
  PauliSum obs(3);
  obs.add(PauliString::from_string("ZII"), 0.7);
  obs.add(PauliString::from_string("IXY"), -0.2);
  TruncationPolicy policy = TruncationPolicy::unlimited();
  const PauliSum out = backpropagate(obs, Circuit(3, 0), {}, policy);
  CHECK(out.size() == obs.size());
  CHECK(hs_inner(out, obs).real() == doctest::Approx(hs_inner(obs, obs).real()));
  CHECK(truncation_error_bound(policy) == 0.0);
}

TEST_CASE("single rotation: exp(-i theta X) maps Z to cos(2t) Z + sin(2t) Y") {
  Circuit c(1, 1);
  c.append(Gate::rotation(PauliSum::from_word(PauliString::from_string("X")), 0, 0));
  const double theta = 0.37;
  TruncationPolicy policy = TruncationPolicy::unlimited();
  const PauliSum out = backpropagate(PauliSum::from_word(PauliString::from_string("Z")),
                                     c, std::vector<double>{theta}, policy);
  CHECK(out.coeff(PauliString::from_string("Z")).real() ==
        doctest::Approx(std::cos(2 * theta)));
  CHECK(out.coeff(PauliString::from_string("Y")).real() ==
        doctest::Approx(std::sin(2 * theta)));
}

TEST_CASE("clifford conjugation matches the dense oracle") {
  Rng rng(3);
  static const char letters[4] = {'I', 'X', 'Y', 'Z'};
  const double dim = 8.0;
  for (const Gate& g : {Gate::fixed_clifford(CliffordKind::H, {1}, 0),
                        Gate::fixed_clifford(CliffordKind::S, {0}, 0),
                        Gate::fixed_clifford(CliffordKind::CX, {0, 2}, 0),
                        Gate::fixed_clifford(CliffordKind::CZ, {1, 2}, 0),
                        Gate::fixed_clifford(CliffordKind::Swap, {0, 1}, 0)}) {
    const Eigen::MatrixXcd u = dense_oracle::clifford_matrix(g, 3);
    for (int trial = 0; trial < 20; ++trial) {
      PauliString w(3);
      for (std::size_t q = 0; q < 3; ++q) w.set_letter(q, letters[rng.uniform_index(4)]);
      const PauliString image = conjugate_by_clifford(w, g);
      const Eigen::MatrixXcd expected = u.adjoint() * dense_oracle::word_matrix(w) * u;
      CHECK((expected - dense_oracle::word_matrix(image)).norm() / dim < 1e-12);
    }
  }
}

TEST_CASE("untruncated pipeline equals the oracle on a QCNN at n=8") {
  const QcnnCircuit qcnn = build_qcnn(8);
  const Circuit& c = qcnn.circuit;
  PauliSum obs(8);
  {
    PauliString w(8);
    w.set_letter(qcnn.final_active[0], 'Z');
    w.set_letter(qcnn.final_active[1], 'Z');
    obs.add(w, 1.0);
  }
  Rng rng(7);
  const Circuit empty(8, 0);
  for (int trial = 0; trial < 5; ++trial) {
    const auto params = random_params(rng, c.n_params);
    TruncationPolicy policy = TruncationPolicy::unlimited();
    const PauliSum propagated = backpropagate(obs, c, params, policy);
    CHECK(policy.discard_log == 0.0);

    const DenseState zero = DenseState::zero_state(8);
    OracleExpectationSource source(zero);
    const Estimate est = loss_from_expectations(propagated, source);
    CHECK(est.std_error == 0.0);
    CHECK(est.value == doctest::Approx(loss(empty, c, params, obs)).epsilon(1e-9));
  }
}

TEST_CASE("l2 mass is conserved without truncation, including cliffords") {
  Rng rng(11);
  Circuit c = mixed_circuit(5, rng, 20);
  const auto params = random_params(rng, c.n_params);
  PauliSum obs(5);
  obs.add(PauliString::from_string("ZIIII"), 0.6);
  obs.add(PauliString::from_string("IIXYI"), 0.8);
  const double mass_before = obs.norm2();
  TruncationPolicy policy = TruncationPolicy::unlimited();
  const PauliSum out = backpropagate(obs, c, params, policy);
  CHECK(out.norm2() == doctest::Approx(mass_before).epsilon(1e-10));
  CHECK(policy.discard_log == 0.0);
}

TEST_CASE("split_observable partitions by weight exactly") {
  Rng rng(13);
  PauliSum obs(6);
  static const char letters[4] = {'I', 'X', 'Y', 'Z'};
  for (int t = 0; t < 30; ++t) {
    PauliString w(6);
    for (std::size_t q = 0; q < 6; ++q) w.set_letter(q, letters[rng.uniform_index(4)]);
    obs.add(w, rng.uniform(-1, 1));
  }
  const auto [low, high] = split_observable(obs, 2);
  for (const auto& [w, coeff] : low) CHECK(w.weight() <= 2);
  for (const auto& [w, coeff] : high) CHECK(w.weight() > 2);

  PauliSum rebuilt = low;
  rebuilt += high;
  rebuilt -= obs;
  CHECK(rebuilt.norm2() < 1e-15);

  // Pythagoras on orthonormal words.
  CHECK(low.norm2() * low.norm2() + high.norm2() * high.norm2() ==
        doctest::Approx(obs.norm2() * obs.norm2()).epsilon(1e-12));

  // Edge splits.
  CHECK(split_observable(obs, 6).second.empty());
  PauliSum heavy(6);
  heavy.add(PauliString::from_string("XYZXII"), 1.0);
  CHECK(split_observable(heavy, 3).first.empty());
}

TEST_CASE("truncation accounting") {
  Circuit c(2, 2);
  c.append(Gate::rotation(PauliSum::from_word(PauliString::from_string("XI")), 0, 0));
  c.append(Gate::rotation(PauliSum::from_word(PauliString::from_string("ZZ")), 1, 0));
  const std::vector<double> params{0.4, 0.9};
  const PauliSum obs = PauliSum::from_word(PauliString::from_string("ZI"));

  // min_coeff above everything discards the full mass.
  TruncationPolicy kill;
  kill.min_coeff = 10.0;
  backpropagate(obs, c, params, kill);
  CHECK(truncation_error_bound(kill) == doctest::Approx(1.0));

  // Tighter weight cuts never discard less.
  double previous = -1.0;
  for (std::size_t k : {2, 1, 0}) {
    TruncationPolicy p = TruncationPolicy::weight_cut(k);
    backpropagate(obs, c, params, p);
    CHECK(p.discard_log >= previous);
    previous = p.discard_log;
  }

  // Term-count cut keeps the largest coefficients deterministically.
  TruncationPolicy top;
  top.max_terms = 1;
  const PauliSum out = backpropagate(obs, c, params, top);
  REQUIRE(out.size() == 1);
  double max_abs = 0.0;
  TruncationPolicy unlimited = TruncationPolicy::unlimited();
  for (const auto& [w, coeff] : backpropagate(obs, c, params, unlimited)) {
    max_abs = std::max(max_abs, std::abs(coeff));
  }
  CHECK(std::abs(out.begin()->second) == doctest::Approx(max_abs));
}

TEST_CASE("unanswerable words are listed") {
  PauliSum obs(8);
  obs.add(PauliString::from_string("ZZZZZZZZ"), 1.0);
  // Budget 6 < weight 8.
  ShadowDataset ds;
  ds.n = 8;
  ds.shots.push_back({std::string(8, 'Z'), std::string(8, '0')});
  ShadowExpectationSource source(ds, 1, 6);
  CHECK_THROWS_AS(loss_from_expectations(obs, source), UnanswerableWordError);
}
