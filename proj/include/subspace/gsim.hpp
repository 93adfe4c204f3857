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

#include <memory>
#include <span>

#include <Eigen/Dense>

#include "subspace/circuit.hpp"
#include "subspace/expectation_source.hpp"
#include "subspace/lie.hpp"

namespace subspace {

/// g-sim: the loss <rho, U^dag O U> evaluated entirely in the adjoint
/// representation of the circuit's dynamical Lie algebra.  The observable
/// coefficient vector is transported through exp(theta ad_H) per gate
/// (Heisenberg direction, reversed gate order) and contracted with the
/// state's expectation vector e_a = <B_a>_rho, which is acquired once and
/// reused across theta samples.
struct GsimInstance {
  std::shared_ptr<const LieBasis> basis;
  Eigen::VectorXd obs_coeffs;
  Eigen::VectorXd state_coeffs;
  double obs_residual = 0.0;
  double state_residual = 0.0;

  /// Cached eigendecomposition of one gate's adjoint generator:
  /// exp(theta A) = V diag(exp(-i theta mu)) V^H with mu real.
  struct GateAction {
    Eigen::MatrixXcd vectors;
    Eigen::VectorXd mu;
    std::size_t slot = 0;
    bool has_slot = false;
    double constant = 0.0;
  };
  /// In reversed gate order, ready to apply left to right.
  std::vector<GateAction> reversed_actions;
};

/// Assembles the adjoint matrices and pulls e_a from the state source.
/// Every circuit generator and the observable must lie in span(basis);
/// otherwise the circuit is inadmissible for g-sim.  A state component
/// outside the span is legal; its norm is reported as state_residual.
GsimInstance prepare_instance(const Circuit& circuit, const PauliSum& obs,
                              std::shared_ptr<const LieBasis> basis,
                              ExpectationSource& state_source);

double gsim_loss(const GsimInstance& instance, std::span<const double> params);

/// exp(angle * adjoint) for an antisymmetric matrix; orthogonal within 1e-9.
Eigen::MatrixXd adjoint_gate_action(const Eigen::MatrixXd& adjoint, double angle);

}  // namespace subspace
