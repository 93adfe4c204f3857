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

#include "subspace/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "subspace/matchgate.hpp"
#include "subspace/pauli_prop.hpp"
#include "subspace/rng.hpp"
#include "subspace/statevector.hpp"

namespace subspace {

namespace {

using nlohmann::json;

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  LinearFit fit;
  const std::size_t m = x.size();
  if (m < 3) return fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  const double denom = m * sxx - sx * sx;
  if (denom == 0.0) return fit;
  fit.slope = (m * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / m;
  double ss_res = 0, ss_tot = 0;
  const double ybar = sy / m;
  for (std::size_t i = 0; i < m; ++i) {
    const double pred = fit.slope * x[i] + fit.intercept;
    ss_res += (y[i] - pred) * (y[i] - pred);
    ss_tot += (y[i] - ybar) * (y[i] - ybar);
  }
  fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  fit.valid = true;
  return fit;
}

std::string format_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string to_string(Concentration c) {
  switch (c) {
    case Concentration::ExponentialDecay: return "exponential-decay";
    case Concentration::PolynomialOrFlat: return "polynomial-or-flat";
    case Concentration::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

VarianceReport variance_scan(const LossFamily& family, const ParamDistribution& dist,
                             const VarianceScanConfig& config) {
  if (config.n_list.empty() || config.samples_per_n < 2) {
    throw ArgumentError("variance_scan needs sizes and at least two samples");
  }
  VarianceReport report;
  report.config = config;
  for (std::size_t n : config.n_list) {
    const std::size_t n_params = family.n_params(n);
    const std::size_t samples = config.samples_per_n;
    std::vector<double> losses(samples, 0.0);

    std::string failure;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t s = 0; s < samples; ++s) {
      const std::uint64_t sample_seed =
          derive_seed(config.seed, "scan/n=" + std::to_string(n) + "/sample=" +
                                       std::to_string(s));
      try {
        const auto params = sample_params(dist, n_params, sample_seed);
        losses[s] = family.loss(n, params);
      } catch (const std::exception& e) {
#pragma omp critical
        if (failure.empty()) {
          failure = "evaluator failed at n=" + std::to_string(n) +
                    ", seed=" + std::to_string(sample_seed) + ": " + e.what();
        }
      }
    }
    if (!failure.empty()) throw Error(failure);

    VarianceRecord rec;
    rec.n = n;
    rec.n_samples = samples;
    for (double l : losses) rec.mean += l;
    rec.mean /= double(samples);
    double m2 = 0, m4 = 0;
    for (double l : losses) {
      const double d = l - rec.mean;
      m2 += d * d;
      m4 += d * d * d * d;
    }
    rec.variance = samples > 1 ? m2 / double(samples - 1) : 0.0;
    if (samples > 3) {
      m2 /= double(samples);
      m4 /= double(samples);
      // Var(s^2) ~ (m4 - (S-3)/(S-1) m2^2) / S.
      const double var_of_var =
          (m4 - (double(samples) - 3.0) / (double(samples) - 1.0) * m2 * m2) /
          double(samples);
      rec.std_error_of_variance = std::sqrt(std::max(0.0, var_of_var));
    }
    report.records.push_back(rec);
  }

  // Fits need at least three sizes and positive variances.
  std::vector<double> xs, lv, lx;
  bool all_tiny = true;
  for (const auto& r : report.records) {
    if (r.variance > 1e-30) all_tiny = false;
  }
  if (!all_tiny) {
    for (const auto& r : report.records) {
      if (r.variance <= 0) continue;
      xs.push_back(double(r.n));
      lv.push_back(std::log(r.variance));
      lx.push_back(std::log(double(r.n)));
    }
    report.fit = least_squares(xs, lv);
    report.loglog_fit = least_squares(lx, lv);
  }

  if (all_tiny) {
    report.classification = Concentration::PolynomialOrFlat;
  } else if (report.fit.valid && report.fit.slope < config.slope_exponential &&
             report.fit.r2 > config.r2_min) {
    report.classification = Concentration::ExponentialDecay;
  } else if (report.fit.valid && report.fit.slope > config.slope_flat) {
    report.classification = Concentration::PolynomialOrFlat;
  } else if (report.loglog_fit.valid && report.loglog_fit.r2 > config.r2_min) {
    // A power law in n explains the decay: polynomially vanishing.
    report.classification = Concentration::PolynomialOrFlat;
  } else if (report.fit.valid) {
    report.classification = Concentration::Inconclusive;
  }
  return report;
}

json VarianceReport::to_json() const {
  json recs = json::array();
  for (const auto& r : records) {
    recs.push_back({{"n", r.n},
                    {"n_samples", r.n_samples},
                    {"mean", r.mean},
                    {"variance", r.variance},
                    {"stderr_of_variance", r.std_error_of_variance}});
  }
  json jfit;
  if (fit.valid) {
    jfit = {{"slope", fit.slope}, {"intercept", fit.intercept}, {"r2", fit.r2}};
  }
  json jll;
  if (loglog_fit.valid) {
    jll = {{"slope", loglog_fit.slope},
           {"intercept", loglog_fit.intercept},
           {"r2", loglog_fit.r2}};
  }
  return json{{"records", recs},
              {"fit_log_variance_vs_n", jfit},
              {"fit_log_variance_vs_log_n", jll},
              {"classification", to_string(classification)},
              {"decision_rule",
               {{"slope_exponential", config.slope_exponential},
                {"slope_flat", config.slope_flat},
                {"r2_min", config.r2_min}}},
              {"samples_per_n", config.samples_per_n},
              {"seed", config.seed}};
}

std::string VarianceReport::to_csv() const {
  std::string out = "n,mean,variance,stderr\r\n";
  for (const auto& r : records) {
    out += std::to_string(r.n) + "," + format_g(r.mean) + "," +
           format_g(r.variance) + "," + format_g(r.std_error_of_variance) +
           "\r\n";
  }
  return out;
}

DlaTrendReport dla_variance_trend(
    const std::function<Circuit(std::size_t n, std::size_t layers)>& builder,
    const std::function<PauliSum(std::size_t n)>& observable,
    const DlaTrendConfig& config) {
  if (config.n_list.empty() || config.samples < 2) {
    throw ArgumentError("dla_variance_trend needs sizes and at least two samples");
  }
  DlaTrendReport report;
  for (std::size_t n : config.n_list) {
    const Circuit circuit = builder(n, config.depth_multiplier * n);
    const PauliSum obs = observable(n);
    const LieBasis basis = lie_closure(circuit.generators(), config.dim_cap);

    const Circuit prep(n, 0);
    std::vector<double> losses(config.samples, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t s = 0; s < config.samples; ++s) {
      const auto params = sample_params(
          ParamDistribution::uniform(0.0, 6.283185307179586476925286766559),
          circuit.n_params,
          derive_seed(config.seed, "dla-trend/n=" + std::to_string(n) +
                                       "/sample=" + std::to_string(s)));
      losses[s] = loss(prep, circuit, params, obs);
    }
    double mean = 0;
    for (double l : losses) mean += l;
    mean /= double(config.samples);
    double var = 0;
    for (double l : losses) var += (l - mean) * (l - mean);
    var /= double(config.samples - 1);

    DlaTrendRow row;
    row.n = n;
    row.dim = basis.dim();
    row.variance = var;
    row.variance_times_dim = var * double(basis.dim());
    report.rows.push_back(row);
  }
  double lo = report.rows.front().variance_times_dim;
  double hi = lo;
  for (const auto& r : report.rows) {
    lo = std::min(lo, r.variance_times_dim);
    hi = std::max(hi, r.variance_times_dim);
  }
  report.flatness_ratio = lo > 0 ? hi / lo : std::numeric_limits<double>::infinity();
  return report;
}

json DlaTrendReport::to_json() const {
  json rows_json = json::array();
  for (const auto& r : rows) {
    rows_json.push_back({{"n", r.n},
                         {"dim", r.dim},
                         {"variance", r.variance},
                         {"variance_times_dim", r.variance_times_dim}});
  }
  return json{{"rows", rows_json}, {"flatness_ratio", flatness_ratio}};
}

SubspaceDescriptor SubspaceDescriptor::pauli_words(
    std::unordered_set<PauliString, PauliStringHash> set) {
  SubspaceDescriptor d;
  d.kind = Kind::PauliWords;
  d.words = std::move(set);
  return d;
}

SubspaceDescriptor SubspaceDescriptor::max_weight_cut(std::size_t k) {
  SubspaceDescriptor d;
  d.kind = Kind::MaxWeight;
  d.max_weight = k;
  return d;
}

SubspaceDescriptor SubspaceDescriptor::support(std::vector<std::size_t> qubits) {
  SubspaceDescriptor d;
  d.kind = Kind::Support;
  d.qubits = std::move(qubits);
  return d;
}

SubspaceDescriptor SubspaceDescriptor::majorana_degrees(std::set<std::size_t> degrees) {
  SubspaceDescriptor d;
  d.kind = Kind::MajoranaDegrees;
  d.degrees = std::move(degrees);
  return d;
}

bool SubspaceDescriptor::contains(const PauliString& word) const {
  switch (kind) {
    case Kind::PauliWords:
      return words.count(word.canonical()) > 0;
    case Kind::MaxWeight:
      return word.weight() <= max_weight;
    case Kind::Support: {
      for (std::size_t q : word.support()) {
        if (std::find(qubits.begin(), qubits.end(), q) == qubits.end()) return false;
      }
      return true;
    }
    case Kind::MajoranaDegrees:
      return degrees.count(majorana_degree(word)) > 0;
  }
  return false;
}

double leakage(const Circuit& circuit, std::span<const double> params,
               const PauliSum& obs, const SubspaceDescriptor& subspace,
               std::size_t term_cap) {
  TruncationPolicy unlimited = TruncationPolicy::unlimited();
  const PauliSum propagated = backpropagate(obs, circuit, params, unlimited);
  if (propagated.size() > term_cap) {
    throw ResourceError("propagated observable has " +
                        std::to_string(propagated.size()) +
                        " terms; use a truncated estimate instead");
  }
  double inside = 0.0, outside = 0.0;
  for (const auto& [w, c] : propagated) {
    (subspace.contains(w) ? inside : outside) += std::norm(c);
  }
  const double total = inside + outside;
  return total > 0 ? outside / total : 0.0;
}

AbSplitReport discrete_vs_continuous(const Circuit& fixed_u, const PauliSum& obs,
                                     std::span<const std::size_t> k_list,
                                     std::size_t samples, std::uint64_t seed) {
  if (fixed_u.n_params != 0) {
    throw ArgumentError("the fixed circuit U must be parameter-free; bind it first");
  }
  const std::size_t n = fixed_u.n;
  // A = U^dag O U, computed once.
  TruncationPolicy unlimited = TruncationPolicy::unlimited();
  const PauliSum conjugated = backpropagate(obs, fixed_u, {}, unlimited);

  // <P>_product-state in closed form: per qubit, Z -> cos(2t), Y -> -sin(2t),
  // X -> 0 for the state exp(-i t X)|0>.
  const auto contribution = [&](const PauliSum& part, std::span<const double> thetas) {
    double acc = 0.0;
    for (const auto& [w, c] : part) {
      double factor = 1.0;
      for (std::size_t q = 0; q < n && factor != 0.0; ++q) {
        switch (w.letter(q)) {
          case 'I': break;
          case 'Z': factor *= std::cos(2.0 * thetas[q]); break;
          case 'Y': factor *= -std::sin(2.0 * thetas[q]); break;
          case 'X': factor = 0.0; break;
        }
      }
      acc += c.real() * factor;
    }
    return acc;
  };

  static const double kDiscreteSet[5] = {0.0, 1.5707963267948966, 3.141592653589793,
                                         4.71238898038469, 6.283185307179586};

  AbSplitReport report;
  report.seed = seed;
  report.samples = samples;
  for (std::size_t k : k_list) {
    const auto [low, high] = split_observable(conjugated, k);
    AbSplitRow row;
    row.k = k;
    std::vector<double> thetas(n);
    for (std::size_t s = 0; s < samples; ++s) {
      Rng cont_rng(derive_seed(seed, "ab/cont/" + std::to_string(s)));
      for (double& t : thetas) t = cont_rng.uniform(0.0, 6.283185307179586);
      row.continuous_low_abs_mean += std::abs(contribution(low, thetas));
      row.continuous_high_abs_mean += std::abs(contribution(high, thetas));

      Rng disc_rng(derive_seed(seed, "ab/disc/" + std::to_string(s)));
      for (double& t : thetas) t = kDiscreteSet[disc_rng.uniform_index(5)];
      row.discrete_low_abs_mean += std::abs(contribution(low, thetas));
      row.discrete_high_abs_mean += std::abs(contribution(high, thetas));
    }
    row.continuous_low_abs_mean /= double(samples);
    row.continuous_high_abs_mean /= double(samples);
    row.discrete_low_abs_mean /= double(samples);
    row.discrete_high_abs_mean /= double(samples);
    report.rows.push_back(row);
  }
  return report;
}

json AbSplitReport::to_json() const {
  json rows_json = json::array();
  for (const auto& r : rows) {
    rows_json.push_back({{"k", r.k},
                         {"continuous_low_abs_mean", r.continuous_low_abs_mean},
                         {"continuous_high_abs_mean", r.continuous_high_abs_mean},
                         {"discrete_low_abs_mean", r.discrete_low_abs_mean},
                         {"discrete_high_abs_mean", r.discrete_high_abs_mean}});
  }
  return json{{"rows", rows_json}, {"seed", seed}, {"samples", samples}};
}

}  // namespace subspace
