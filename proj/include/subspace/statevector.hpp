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

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "subspace/circuit.hpp"
#include "subspace/pauli.hpp"

namespace subspace {

/// Execution policy for the gate kernels.  Parallel is the default; Serial
/// is the reference implementation kept for testing and benchmarking.  Both
/// produce bit-identical results (every amplitude update is independent).
enum class Exec { Serial, Parallel };

inline constexpr std::size_t kDefaultQubitCap = 20;

/// Exact dense n-qubit state, 2^n amplitudes.
struct DenseState {
  std::size_t n = 0;
  std::vector<std::complex<double>> amplitudes;

  static DenseState zero_state(std::size_t n, std::size_t qubit_cap = kDefaultQubitCap);
  static DenseState basis_state(std::size_t n, std::uint64_t bits,
                                std::size_t qubit_cap = kDefaultQubitCap);

  double norm() const;
};

/// Applies exp(-i angle W) for a single canonical Pauli word W scaled by
/// `coeff` (the effective angle is coeff * angle).
void apply_word_rotation(DenseState& state, const PauliString& word, double angle,
                         Exec exec = Exec::Parallel);

void apply_gate(DenseState& state, const Gate& gate, std::span<const double> params,
                Exec exec = Exec::Parallel);

void apply_circuit(DenseState& state, const Circuit& circuit,
                   std::span<const double> params, Exec exec = Exec::Parallel);

/// Runs `circuit` with `params` on |0...0>.
DenseState run_circuit(const Circuit& circuit, std::span<const double> params,
                       Exec exec = Exec::Parallel,
                       std::size_t qubit_cap = kDefaultQubitCap);

/// <psi| W |psi> for a canonical (Hermitian) Pauli word; in [-1, 1].
double expectation(const DenseState& state, const PauliString& word);

/// <psi| O |psi> for a Hermitian Pauli sum.
double expectation(const DenseState& state, const PauliSum& obs);

/// Loss Tr[U rho U^dag O]: prepares |0...0>, applies `state_prep` (which
/// must be parameter-free; see Circuit::bind), then `circuit` with `params`,
/// and evaluates the Hermitian observable.
double loss(const Circuit& state_prep, const Circuit& circuit,
            std::span<const double> params, const PauliSum& obs,
            Exec exec = Exec::Parallel);

/// Partial trace onto `qubits` (sorted ascending); the result's local bit i
/// corresponds to qubits[i].
Eigen::MatrixXcd reduced_density(const DenseState& state,
                                 std::span<const std::size_t> qubits,
                                 std::size_t subset_cap = 14);

/// d loss / d theta_slot via the two-point shift rule
/// l(theta + pi/4) - l(theta - pi/4), valid when the slot drives exactly one
/// single-word rotation with unit |coefficient|.
double parameter_shift_gradient(const Circuit& state_prep, const Circuit& circuit,
                                std::span<const double> params, const PauliSum& obs,
                                std::size_t slot);

}  // namespace subspace
