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

// Compares the serial reference kernels against the OpenMP kernels: gate
// throughput on dense states and end-to-end variance-scan scaling.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "subspace/diagnostics.hpp"
#include "subspace/rng.hpp"
#include "subspace/statevector.hpp"

using namespace subspace;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

Circuit random_circuit(std::size_t n, std::size_t gates, std::uint64_t seed) {
  Rng rng(seed);
  Circuit c(n, gates);
  static const char letters[3] = {'X', 'Y', 'Z'};
  for (std::size_t g = 0; g < gates; ++g) {
    PauliString w(n);
    const std::size_t a = rng.uniform_index(n);
    w.set_letter(a, letters[rng.uniform_index(3)]);
    const std::size_t b = (a + 1 + rng.uniform_index(n - 1)) % n;
    w.set_letter(b, letters[rng.uniform_index(3)]);
    c.append(Gate::rotation(PauliSum::from_word(w), g, 0));
  }
  return c;
}

double bench_kernels(std::size_t n, std::size_t gates, Exec exec, double* checksum) {
  const Circuit c = random_circuit(n, gates, 7);
  std::vector<double> params(gates);
  Rng rng(11);
  for (double& p : params) p = rng.uniform(0, 6.28);

  DenseState state = DenseState::zero_state(n);
  const auto start = std::chrono::steady_clock::now();
  apply_circuit(state, c, params, exec);
  const double elapsed = seconds_since(start);
  *checksum = std::norm(state.amplitudes[1]);
  return elapsed;
}

double bench_scan(std::size_t max_threads) {
  omp_set_num_threads(static_cast<int>(max_threads));
  LossFamily family;
  family.n_params = [](std::size_t n) { return build_shallow_hea(n, 2).n_params; };
  family.loss = [](std::size_t n, std::span<const double> params) {
    const Circuit c = build_shallow_hea(n, 2);
    const PauliSum obs = PauliSum::from_word(PauliString::single(n, 0, 'Z'));
    return loss(Circuit(n, 0), c, params, obs);
  };
  VarianceScanConfig config;
  config.n_list = {8, 10, 12};
  config.samples_per_n = 100;
  config.seed = 3;
  const auto start = std::chrono::steady_clock::now();
  variance_scan(family, ParamDistribution::uniform(0, 6.283185307179586), config);
  return seconds_since(start);
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n = 18;
  std::size_t gates = 60;
  if (argc > 1) n = std::stoul(argv[1]);
  if (argc > 2) gates = std::stoul(argv[2]);

  const int hw_threads = omp_get_max_threads();
  std::printf("statevector kernels: n=%zu, %zu two-qubit-word rotations\n", n, gates);

  double checksum_serial = 0, checksum_parallel = 0;
  const double t_serial = bench_kernels(n, gates, Exec::Serial, &checksum_serial);
  const double t_parallel = bench_kernels(n, gates, Exec::Parallel, &checksum_parallel);
  const double amps = double(gates) * double(1ULL << n);
  std::printf("  serial   : %8.3f s  (%6.1f M amp-updates/s)\n", t_serial,
              amps / t_serial / 1e6);
  std::printf("  parallel : %8.3f s  (%6.1f M amp-updates/s, %d threads)\n",
              t_parallel, amps / t_parallel / 1e6, hw_threads);
  std::printf("  speedup  : %.2fx  (checksums agree: %s)\n", t_serial / t_parallel,
              checksum_serial == checksum_parallel ? "yes" : "NO");

  std::printf("\nvariance scan (shallow brickwork, n in {8,10,12}, 100 samples):\n");
  const double scan1 = bench_scan(1);
  std::printf("  1 thread : %8.3f s\n", scan1);
  const double scan_all = bench_scan(hw_threads);
  std::printf("  %d threads: %8.3f s  (speedup %.2fx)\n", hw_threads, scan_all,
              scan1 / scan_all);
  return 0;
}
