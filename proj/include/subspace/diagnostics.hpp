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
#include <functional>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "subspace/circuit.hpp"
#include "subspace/lie.hpp"
#include "subspace/pauli.hpp"

namespace subspace {

// ---------------------------------------------------------------------------
// Variance scans.

/// A family of losses indexed by system size, for concentration scans.
struct LossFamily {
  std::function<std::size_t(std::size_t n)> n_params;
  std::function<double(std::size_t n, std::span<const double> params)> loss;
};

enum class Concentration { ExponentialDecay, PolynomialOrFlat, Inconclusive };

std::string to_string(Concentration c);

struct VarianceScanConfig {
  std::vector<std::size_t> n_list;
  std::size_t samples_per_n = 200;
  std::uint64_t seed = 1;
  /// Decision rule: exponential-decay iff the log-variance vs n slope is
  /// below slope_exponential with r^2 above r2_min; polynomial-or-flat iff
  /// the slope is above slope_flat or a power law (log-variance vs log n)
  /// fits with r^2 above r2_min; inconclusive otherwise.
  double slope_exponential = -0.2;
  double slope_flat = -0.05;
  double r2_min = 0.9;
};

struct VarianceRecord {
  std::size_t n = 0;
  std::size_t n_samples = 0;
  double mean = 0.0;
  double variance = 0.0;
  double std_error_of_variance = 0.0;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  bool valid = false;  // needs >= 3 sizes
};

struct VarianceReport {
  std::vector<VarianceRecord> records;
  LinearFit fit;          // log(variance) vs n
  LinearFit loglog_fit;   // log(variance) vs log(n)
  Concentration classification = Concentration::Inconclusive;
  VarianceScanConfig config;

  nlohmann::json to_json() const;
  std::string to_csv() const;  // rows: n, mean, variance, stderr
};

/// Unbiased per-size sample variance over theta ~ dist with derived per-
/// sample seeds; parallel over samples.  Aborts with the failing (n, seed)
/// on evaluator errors.
VarianceReport variance_scan(const LossFamily& family, const ParamDistribution& dist,
                             const VarianceScanConfig& config);

// ---------------------------------------------------------------------------
// Variance vs DLA dimension.

struct DlaTrendRow {
  std::size_t n = 0;
  std::size_t dim = 0;
  double variance = 0.0;
  double variance_times_dim = 0.0;
};

struct DlaTrendReport {
  std::vector<DlaTrendRow> rows;
  /// max/min of variance * dim over the scanned sizes (flatness of the
  /// inverse-dimension law).
  double flatness_ratio = 0.0;

  nlohmann::json to_json() const;
};

struct DlaTrendConfig {
  std::vector<std::size_t> n_list;
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  /// Circuit depth multiplier: layers = depth_multiplier * n (deep circuits
  /// approach the family's limiting distribution).
  std::size_t depth_multiplier = 3;
  std::size_t dim_cap = kDefaultDimCap;
};

/// Scans an ansatz family (builder(n, layers) plus observable(n)) with the
/// exact oracle and reports variance against the closure dimension.
DlaTrendReport dla_variance_trend(
    const std::function<Circuit(std::size_t n, std::size_t layers)>& builder,
    const std::function<PauliSum(std::size_t n)>& observable,
    const DlaTrendConfig& config);

// ---------------------------------------------------------------------------
// Subspace leakage.

/// Membership predicate over Pauli words for a polynomial subspace: an
/// explicit word set, a weight cut, a support restriction, or a set of
/// Majorana degrees.
struct SubspaceDescriptor {
  enum class Kind { PauliWords, MaxWeight, Support, MajoranaDegrees };
  Kind kind = Kind::MaxWeight;

  std::unordered_set<PauliString, PauliStringHash> words;  // PauliWords
  std::size_t max_weight = 0;                              // MaxWeight
  std::vector<std::size_t> qubits;                         // Support
  std::set<std::size_t> degrees;                           // MajoranaDegrees

  static SubspaceDescriptor pauli_words(
      std::unordered_set<PauliString, PauliStringHash> set);
  static SubspaceDescriptor max_weight_cut(std::size_t k);
  static SubspaceDescriptor support(std::vector<std::size_t> qubits);
  static SubspaceDescriptor majorana_degrees(std::set<std::size_t> degrees);

  bool contains(const PauliString& word) const;
};

/// Fraction of the l2 mass of U^dag O U outside the subspace, in [0, 1];
/// exactly 0 for proper subspaces.  Computed by untruncated back-propagation
/// (ResourceError beyond term_cap, suggesting a truncated estimate instead).
double leakage(const Circuit& circuit, std::span<const double> params,
               const PauliSum& obs, const SubspaceDescriptor& subspace,
               std::size_t term_cap = 1u << 22);

// ---------------------------------------------------------------------------
// Local/global split of a fixed conjugated observable (A = A^L + A^H).

struct AbSplitRow {
  std::size_t k = 0;
  double continuous_low_abs_mean = 0.0;
  double continuous_high_abs_mean = 0.0;
  double discrete_low_abs_mean = 0.0;
  double discrete_high_abs_mean = 0.0;
};

struct AbSplitReport {
  std::vector<AbSplitRow> rows;
  std::uint64_t seed = 0;
  std::size_t samples = 0;

  nlohmann::json to_json() const;
};

/// For the composite circuit U . (tensor_i exp(-i theta_i X_i)) with U fixed
/// and parameter-free: back-propagates O through U once, splits A = U^dag O U
/// at each weight k, and estimates E[|contribution|] of both parts under the
/// discrete set {0, pi/2, pi, 3pi/2, 2pi} and Uniform[0, 2pi].  Product-state
/// expectations are evaluated in closed form per sample.
AbSplitReport discrete_vs_continuous(const Circuit& fixed_u, const PauliSum& obs,
                                     std::span<const std::size_t> k_list,
                                     std::size_t samples, std::uint64_t seed);

}  // namespace subspace
