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

#include "subspace/shadows.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "subspace/rng.hpp"
#include "subspace/statevector.hpp"

namespace subspace {

namespace {

using cdouble = std::complex<double>;

// Rotate |psi> so that measuring qubit q in `basis` becomes a computational
// measurement: H for X, H S^dag for Y, nothing for Z.
void rotate_for_basis(std::vector<cdouble>& amps, std::size_t q, char basis) {
  if (basis == 'Z') return;
  const std::uint64_t mask = 1ULL << q;
  const std::uint64_t low = mask - 1;
  const std::size_t half = amps.size() / 2;
  const double inv_sqrt2 = 0.70710678118654752440;
  for (std::size_t h = 0; h < half; ++h) {
    const std::uint64_t b0 = ((static_cast<std::uint64_t>(h) & ~low) << 1) |
                             (static_cast<std::uint64_t>(h) & low);
    const std::uint64_t b1 = b0 | mask;
    cdouble a0 = amps[b0];
    cdouble a1 = amps[b1];
    if (basis == 'Y') a1 *= cdouble(0, -1);  // S^dag
    amps[b0] = inv_sqrt2 * (a0 + a1);
    amps[b1] = inv_sqrt2 * (a0 - a1);
  }
}

}  // namespace

ShadowDataset acquire(const Circuit& state_prep, std::size_t n_shots,
                      std::uint64_t seed, std::string state_prep_id,
                      std::size_t qubit_cap) {
  if (state_prep.n_params != 0) {
    throw ArgumentError("state_prep must be parameter-free; bind it first");
  }
  const DenseState psi = run_circuit(state_prep, {}, Exec::Parallel, qubit_cap);
  const std::size_t n = psi.n;

  ShadowDataset ds;
  ds.n = n;
  ds.seed = seed;
  ds.state_prep_id = std::move(state_prep_id);
  ds.shots.resize(n_shots);

#pragma omp parallel
  {
    std::vector<cdouble> work(psi.amplitudes.size());
#pragma omp for schedule(static)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(n_shots); ++s) {
      Rng rng(derive_seed(seed, "shot/" + std::to_string(s)));
      ShadowDataset::Shot& shot = ds.shots[s];
      shot.basis.resize(n);
      shot.bits.resize(n);

      work = psi.amplitudes;
      for (std::size_t q = 0; q < n; ++q) {
        shot.basis[q] = "XYZ"[rng.uniform_index(3)];
        rotate_for_basis(work, q, shot.basis[q]);
      }
      // One Born draw by inverse CDF.
      const double u = rng.uniform();
      double acc = 0.0;
      std::uint64_t outcome = work.size() - 1;
      for (std::size_t b = 0; b < work.size(); ++b) {
        acc += std::norm(work[b]);
        if (u < acc) {
          outcome = b;
          break;
        }
      }
      for (std::size_t q = 0; q < n; ++q) {
        shot.bits[q] = (outcome >> q) & 1 ? '1' : '0';
      }
    }
  }
  return ds;
}

Estimate estimate_pauli(const ShadowDataset& dataset, const PauliString& word,
                        std::size_t batches, std::size_t locality_budget) {
  if (word.num_qubits() != dataset.n) {
    throw DimensionError("word size does not match dataset");
  }
  const std::vector<std::size_t> support = word.support();
  if (support.size() > locality_budget) {
    throw UnanswerableWordError("word weight " + std::to_string(support.size()) +
                                    " exceeds the locality budget " +
                                    std::to_string(locality_budget),
                                word.to_string());
  }
  if (dataset.shots.empty() || batches == 0) {
    throw ArgumentError("estimate_pauli needs shots and at least one batch");
  }
  if (word.phase_power() != 0 && word.phase_power() != 2) {
    throw ArgumentError("estimate_pauli expects a Hermitian word");
  }
  const double sign = word.phase_power() == 2 ? -1.0 : 1.0;
  const double boost = std::pow(3.0, double(support.size()));

  const std::size_t n_shots = dataset.shots.size();
  batches = std::min(batches, n_shots);
  std::vector<double> means(batches, 0.0);
  std::vector<std::size_t> counts(batches, 0);
  for (std::size_t s = 0; s < n_shots; ++s) {
    const std::size_t batch = s * batches / n_shots;
    const ShadowDataset::Shot& shot = dataset.shots[s];
    double est = boost;
    for (std::size_t q : support) {
      if (shot.basis[q] != word.letter(q)) {
        est = 0.0;
        break;
      }
      if (shot.bits[q] == '1') est = -est;
    }
    means[batch] += est;
    counts[batch] += 1;
  }
  for (std::size_t b = 0; b < batches; ++b) {
    means[b] /= std::max<std::size_t>(counts[b], 1);
  }
  std::sort(means.begin(), means.end());
  const double median = batches % 2 == 1
                            ? means[batches / 2]
                            : 0.5 * (means[batches / 2 - 1] + means[batches / 2]);
  double mean_of_means = 0.0;
  for (double m : means) mean_of_means += m;
  mean_of_means /= double(batches);
  double var = 0.0;
  for (double m : means) var += (m - mean_of_means) * (m - mean_of_means);
  var /= batches > 1 ? double(batches - 1) : 1.0;
  return {sign * median, std::sqrt(var / double(batches))};
}

std::vector<double> direct_expectations(const Circuit& state_prep,
                                        const std::vector<PauliSum>& observables,
                                        std::size_t qubit_cap) {
  if (state_prep.n_params != 0) {
    throw ArgumentError("state_prep must be parameter-free; bind it first");
  }
  const DenseState psi = run_circuit(state_prep, {}, Exec::Parallel, qubit_cap);
  std::vector<double> out;
  out.reserve(observables.size());
  for (const PauliSum& obs : observables) {
    out.push_back(expectation(psi, obs));
  }
  return out;
}

std::uint64_t qcnn_shadow_count(double eps, double delta, std::size_t k,
                                std::size_t d, std::size_t n, double op_norm) {
  if (!(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0)) {
    throw ArgumentError("eps and delta must lie in (0, 1)");
  }
  if (k > n) {
    throw ArgumentError("k must not exceed n");
  }
  const double count = 300.0 * op_norm * op_norm / (eps * eps) *
                       std::pow(2.0, double(k)) *
                       (std::pow(double(n), double(d)) + double(n) - double(k) +
                        std::log(2.0 / delta));
  if (!(count < 9.2e18)) {
    throw ResourceError("shadow sample count overflows 64 bits");
  }
  return static_cast<std::uint64_t>(std::ceil(count));
}

std::string ShadowDataset::to_text() const {
  std::ostringstream out;
  out << "shadow/v1 n=" << n << " shots=" << shots.size() << " seed=" << seed
      << " prep=" << state_prep_id << "\n";
  for (const Shot& s : shots) {
    out << s.basis << ' ' << s.bits << '\n';
  }
  return out.str();
}

ShadowDataset ShadowDataset::from_text(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header) || header.rfind("shadow/v1 ", 0) != 0) {
    throw ArgumentError("missing shadow/v1 header");
  }
  ShadowDataset ds;
  std::size_t shots = 0;
  {
    std::istringstream hs(header.substr(10));
    std::string field;
    while (hs >> field) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) {
        throw ArgumentError("malformed header field: " + field);
      }
      const std::string key = field.substr(0, eq);
      const std::string value = field.substr(eq + 1);
      if (key == "n") ds.n = std::stoull(value);
      else if (key == "shots") shots = std::stoull(value);
      else if (key == "seed") ds.seed = std::stoull(value);
      else if (key == "prep") ds.state_prep_id = value;
      else throw ArgumentError("unknown header field: " + key);
    }
  }
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.size() != 2 * ds.n + 1 || line[ds.n] != ' ') {
      throw ArgumentError("malformed shot line: " + line);
    }
    Shot s;
    s.basis = line.substr(0, ds.n);
    s.bits = line.substr(ds.n + 1);
    for (char c : s.basis) {
      if (c != 'X' && c != 'Y' && c != 'Z') throw ArgumentError("bad basis char");
    }
    for (char c : s.bits) {
      if (c != '0' && c != '1') throw ArgumentError("bad outcome bit");
    }
    ds.shots.push_back(std::move(s));
  }
  if (ds.shots.size() != shots) {
    throw ArgumentError("shot count does not match header");
  }
  return ds;
}

}  // namespace subspace
