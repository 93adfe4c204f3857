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

#include <nlohmann/json.hpp>

#include "subspace/diagnostics.hpp"
#include "subspace/lightcone.hpp"
#include "subspace/rng.hpp"
#include "subspace/statevector.hpp"

using namespace subspace;

namespace {

PauliSum global_z(std::size_t n) {
  PauliString w(n);
  for (std::size_t q = 0; q < n; ++q) w.set_letter(q, 'Z');
  return PauliSum::from_word(w);
}

LossFamily hea_family(std::size_t layers, bool global) {
  LossFamily family;
  family.n_params = [layers](std::size_t n) {
    return build_shallow_hea(n, layers).n_params;
  };
  family.loss = [layers, global](std::size_t n, std::span<const double> params) {
    const Circuit c = build_shallow_hea(n, layers);
    const PauliSum obs =
        global ? global_z(n) : PauliSum::from_word(PauliString::single(n, 0, 'Z'));
    return loss(Circuit(n, 0), c, params, obs);
  };
  return family;
}

const ParamDistribution kUniform =
    ParamDistribution::uniform(0.0, 6.283185307179586);

}  // namespace

TEST_CASE("constant losses classify as polynomial-or-flat") {
  LossFamily constant;
  constant.n_params = [](std::size_t) { return std::size_t{3}; };
  constant.loss = [](std::size_t, std::span<const double>) { return 0.25; };

  VarianceScanConfig config;
  config.n_list = {4, 6, 8};
  config.samples_per_n = 50;
  const VarianceReport report = variance_scan(constant, kUniform, config);
  for (const auto& rec : report.records) {
    CHECK(rec.variance == doctest::Approx(0.0));
    CHECK(rec.mean == doctest::Approx(0.25));
  }
  CHECK(report.classification == Concentration::PolynomialOrFlat);
}

TEST_CASE("global measurements concentrate, local ones do not") {
  VarianceScanConfig config;
  config.n_list = {4, 6, 8};
  config.samples_per_n = 150;
  config.seed = 5;

  const VarianceReport global_report =
      variance_scan(hea_family(2, true), kUniform, config);
  CHECK(global_report.classification == Concentration::ExponentialDecay);
  CHECK(global_report.fit.slope < -0.2);

  const VarianceReport local_report =
      variance_scan(hea_family(2, false), kUniform, config);
  CHECK(local_report.classification == Concentration::PolynomialOrFlat);
}

TEST_CASE("variance scans are seed-reproducible bit-exactly") {
  VarianceScanConfig config;
  config.n_list = {4, 6};
  config.samples_per_n = 40;
  config.seed = 11;
  const VarianceReport a = variance_scan(hea_family(1, false), kUniform, config);
  const VarianceReport b = variance_scan(hea_family(1, false), kUniform, config);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].mean == b.records[i].mean);
    CHECK(a.records[i].variance == b.records[i].variance);
  }
  CHECK(a.to_json() == b.to_json());
  CHECK(a.to_csv() == b.to_csv());
}

TEST_CASE("classification is stable under doubling the sample count") {
  VarianceScanConfig config;
  config.n_list = {4, 6, 8};
  config.samples_per_n = 100;
  config.seed = 13;
  const auto label = variance_scan(hea_family(2, true), kUniform, config).classification;
  config.samples_per_n = 200;
  CHECK(variance_scan(hea_family(2, true), kUniform, config).classification == label);
}

TEST_CASE("evaluator failures abort with the failing size and seed") {
  LossFamily broken;
  broken.n_params = [](std::size_t) { return std::size_t{1}; };
  broken.loss = [](std::size_t n, std::span<const double>) -> double {
    if (n >= 6) throw ArgumentError("boom");
    return 0.0;
  };
  VarianceScanConfig config;
  config.n_list = {4, 6};
  config.samples_per_n = 4;
  try {
    variance_scan(broken, kUniform, config);
    FAIL("expected abort");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("n=6") != std::string::npos);
    CHECK(std::string(e.what()).find("seed=") != std::string::npos);
  }
}

TEST_CASE("matchgate variance tracks the inverse DLA dimension") {
  DlaTrendConfig config;
  config.n_list = {3, 4, 5};
  config.samples = 150;
  config.seed = 17;
  config.depth_multiplier = 3;
  const DlaTrendReport report = dla_variance_trend(
      [](std::size_t n, std::size_t layers) { return build_matchgate(n, layers); },
      [](std::size_t n) {
        return PauliSum::from_word(PauliString::single(n, 0, 'Z'));
      },
      config);
  REQUIRE(report.rows.size() == 3);
  CHECK(report.rows[0].dim == 15);
  CHECK(report.rows[1].dim == 28);
  CHECK(report.rows[2].dim == 45);
  for (const auto& row : report.rows) CHECK(row.variance > 0.0);
  CHECK(report.flatness_ratio < 3.0);
}

TEST_CASE("deep-circuit saturation: doubling depth moves variance by < 2x") {
  DlaTrendConfig config;
  config.n_list = {4};
  config.samples = 200;
  config.seed = 19;
  config.depth_multiplier = 3;
  const auto base = dla_variance_trend(
      [](std::size_t n, std::size_t layers) { return build_matchgate(n, layers); },
      [](std::size_t n) {
        return PauliSum::from_word(PauliString::single(n, 0, 'Z'));
      },
      config);
  config.depth_multiplier = 6;
  const auto deep = dla_variance_trend(
      [](std::size_t n, std::size_t layers) { return build_matchgate(n, layers); },
      [](std::size_t n) {
        return PauliSum::from_word(PauliString::single(n, 0, 'Z'));
      },
      config);
  const double ratio = base.rows[0].variance / deep.rows[0].variance;
  CHECK(ratio > 0.5);
  CHECK(ratio < 2.0);
}

TEST_CASE("leakage vanishes on proper subspaces") {
  Rng rng(23);

  // Matchgate: O = Z_0 lives in the degree-2 Majorana module.
  const Circuit mg = build_matchgate(4, 2);
  std::vector<double> params(mg.n_params);
  for (double& x : params) x = rng.uniform(0, 6.28);
  const PauliSum z0 = PauliSum::from_word(PauliString::single(4, 0, 'Z'));
  const double mg_leak =
      leakage(mg, params, z0, SubspaceDescriptor::majorana_degrees({2}));
  CHECK(mg_leak <= 1e-10);

  // Shallow HEA: O = Z_mu stays inside its backward cone.
  const Circuit hea = build_shallow_hea(8, 2);
  std::vector<double> hp(hea.n_params);
  for (double& x : hp) x = rng.uniform(0, 6.28);
  const PauliSum z3 = PauliSum::from_word(PauliString::single(8, 3, 'Z'));
  const LightCone cone = backward_cone(hea, {std::vector<std::size_t>{3}});
  const double hea_leak =
      leakage(hea, hp, z3, SubspaceDescriptor::support(cone.qubit_set));
  CHECK(hea_leak <= 1e-10);

  // But the full-weight subspace never leaks either (range check).
  const double trivial =
      leakage(hea, hp, z3, SubspaceDescriptor::max_weight_cut(8));
  CHECK(trivial == doctest::Approx(0.0));
}

TEST_CASE("leakage is a fraction in [0, 1] and detects escaping mass") {
  Rng rng(29);
  const Circuit c = build_shallow_hea(6, 2);
  std::vector<double> params(c.n_params);
  for (double& x : params) x = rng.uniform(0, 6.28);
  const PauliSum z2 = PauliSum::from_word(PauliString::single(6, 2, 'Z'));
  const double l = leakage(c, params, z2, SubspaceDescriptor::max_weight_cut(1));
  CHECK(l >= 0.0);
  CHECK(l <= 1.0);
  CHECK(l > 0.01);  // weight-1 cut must lose mass for an entangling circuit
}

TEST_CASE("small-angle initialization keeps leakage above weight 4 small") {
  const std::size_t n = 8, layers = 8;
  const Circuit c = build_rot_cz(n, layers);
  const auto dist = ParamDistribution::gaussian_init(layers);  // sigma^2 = 1/(4L)
  const PauliSum obs = PauliSum::from_word(PauliString::single(n, 3, 'Z'));

  std::vector<double> leaks;
  for (std::size_t s = 0; s < 10; ++s) {
    const auto params = sample_params(dist, c.n_params, derive_seed(31, std::to_string(s)));
    leaks.push_back(leakage(c, params, obs, SubspaceDescriptor::max_weight_cut(4)));
  }
  std::sort(leaks.begin(), leaks.end());
  const double median = leaks[leaks.size() / 2];
  CHECK(median < 0.05);
}

TEST_CASE("discrete vs continuous split: degenerate cases") {
  const std::size_t n = 4;
  const Circuit identity(n, 0);
  const PauliSum z0 = PauliSum::from_word(PauliString::single(n, 0, 'Z'));

  const std::vector<std::size_t> ks{1, 2, 4};
  const AbSplitReport report = discrete_vs_continuous(identity, z0, ks, 40, 7);
  REQUIRE(report.rows.size() == 3);
  for (const auto& row : report.rows) {
    // A = Z_0 has weight 1: A^H is empty for every k >= 1.
    CHECK(row.continuous_high_abs_mean == doctest::Approx(0.0));
    CHECK(row.discrete_high_abs_mean == doctest::Approx(0.0));
  }
  // k = n leaves nothing above the cut by definition.
  CHECK(report.rows.back().k == 4);
}

TEST_CASE("parity-structured circuits separate the distributions") {
  // CX ladder conjugates Z_last into the global parity word; dressing
  // rotations spread weights.  The discrete set keeps the heavy part alive
  // while the continuous average suppresses it.
  const std::size_t n = 6;
  Circuit u(n, 0);
  for (std::size_t q = 0; q < n; ++q) {
    u.append(Gate::rotation_const(PauliSum::from_word(PauliString::single(n, q, 'Y')),
                                  0.15, 0));
  }
  for (std::size_t q = 0; q + 1 < n; ++q) {
    u.append(Gate::fixed_clifford(CliffordKind::CX, {q, q + 1}, 1));
  }
  const PauliSum obs = PauliSum::from_word(PauliString::single(n, n - 1, 'Z'));

  const std::vector<std::size_t> ks{1, 2, 3, 4};
  const AbSplitReport report = discrete_vs_continuous(u, obs, ks, 300, 11);
  REQUIRE(report.rows.size() == 4);
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    CHECK(report.rows[i].continuous_high_abs_mean <=
          report.rows[i - 1].continuous_high_abs_mean + 1e-12);
  }
  const auto& last = report.rows.back();
  CHECK(last.discrete_high_abs_mean > 5.0 * last.continuous_high_abs_mean);
}
