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

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "subspace/circuit.hpp"
#include "subspace/expectation_source.hpp"
#include "subspace/pauli.hpp"
#include "subspace/shadows.hpp"

namespace subspace {

/// The backward light cone of an observable: the qubits that can influence
/// it, plus the sub-circuit of gates inside the cone (original order and
/// qubit labels preserved).
struct LightCone {
  std::vector<std::size_t> qubit_set;  // sorted
  Circuit kept;
};

/// Reverse sweep: a gate is kept iff it overlaps the growing support set,
/// and its targets are merged into the support.
LightCone backward_cone(const Circuit& circuit, std::span<const std::size_t> support);

inline constexpr std::size_t kDefaultConeCap = 14;

/// Exact reduced loss <rho_reduced, U_cone^dag O U_cone>: Heisenberg-evolves
/// the dense observable matrix in the 2^|cone| space and contracts with the
/// reduced state.  Equals the full oracle loss for any parameters.
double reduced_loss(const LightCone& cone, const Eigen::MatrixXcd& rho_reduced,
                    const PauliSum& obs, std::span<const double> params,
                    std::size_t cone_cap = kDefaultConeCap);

/// Shadow-data route: expands U^dag O U in Pauli words on the cone qubits
/// and estimates each word from the dataset.
Estimate reduced_loss_from_shadows(const LightCone& cone, const ShadowDataset& dataset,
                                   const PauliSum& obs, std::span<const double> params,
                                   std::size_t batches = kDefaultBatches,
                                   std::size_t locality_budget = kDefaultLocalityBudget);

}  // namespace subspace
