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

#include "subspace/gsim.hpp"

#include <cmath>

namespace subspace {

namespace {

constexpr double kSpanTol = 1e-8;

// exp(theta A) for real antisymmetric A via the Hermitian matrix iA:
// iA = V diag(mu) V^H, so exp(theta A) = V diag(exp(-i theta mu)) V^H.
struct SkewExp {
  Eigen::MatrixXcd vectors;
  Eigen::VectorXd mu;

  explicit SkewExp(const Eigen::MatrixXd& a) {
    const Eigen::MatrixXcd herm = Complex(0, 1) * a.cast<Complex>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
    vectors = es.eigenvectors();
    mu = es.eigenvalues();
  }

  Eigen::VectorXd apply(double theta, const Eigen::VectorXd& v) const {
    Eigen::VectorXcd w = vectors.adjoint() * v.cast<Complex>();
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      w[i] *= std::polar(1.0, -theta * mu[i]);
    }
    return (vectors * w).real();
  }
};

void check_antisymmetric(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols() || (a + a.transpose()).cwiseAbs().maxCoeff() > 1e-9) {
    throw ConsistencyError("adjoint generator must be antisymmetric");
  }
}

}  // namespace

GsimInstance prepare_instance(const Circuit& circuit, const PauliSum& obs,
                              std::shared_ptr<const LieBasis> basis,
                              ExpectationSource& state_source) {
  if (!basis || basis->n != circuit.n || obs.num_qubits() != circuit.n) {
    throw DimensionError("circuit, observable and basis sizes must agree");
  }
  GsimInstance inst;
  inst.basis = basis;

  const AlgebraProjection obs_proj = project_onto_algebra(obs, *basis);
  if (obs_proj.residual > kSpanTol) {
    throw InadmissibleError("observable lies outside the algebra span (residual " +
                            std::to_string(obs_proj.residual) + ")");
  }
  inst.obs_coeffs = obs_proj.coeffs;
  inst.obs_residual = obs_proj.residual;

  // Per-gate adjoint matrices, cached as eigendecompositions, reversed order.
  for (std::size_t gi = circuit.gates.size(); gi-- > 0;) {
    const Gate& g = circuit.gates[gi];
    if (!g.is_rotation()) {
      throw InadmissibleError("g-sim supports rotation gates only", gi);
    }
    Eigen::MatrixXd ad;
    try {
      ad = adjoint_generator(g.generator, *basis);
    } catch (const ConsistencyError&) {
      throw InadmissibleError("gate generator lies outside the algebra span", gi);
    }
    const SkewExp decomp(ad);
    GsimInstance::GateAction action;
    action.vectors = decomp.vectors;
    action.mu = decomp.mu;
    if (g.param_slot) {
      action.slot = *g.param_slot;
      action.has_slot = true;
    } else {
      action.constant = *g.constant_angle;
    }
    inst.reversed_actions.push_back(std::move(action));
  }

  // e_a = <B_a>_rho from the data-acquisition source, one query per basis
  // element; cached in the instance for reuse across theta samples.
  inst.state_coeffs.resize(basis->dim());
  bool word_basis = true;
  for (std::size_t a = 0; a < basis->dim(); ++a) {
    inst.state_coeffs[a] = state_source.sum_expectation(basis->basis[a]).value;
    word_basis = word_basis && basis->basis[a].size() == 1;
  }
  if (word_basis) {
    for (std::size_t a = 0; a < basis->dim(); ++a) {
      if (std::abs(inst.state_coeffs[a]) > 1.0 + 1e-9) {
        throw ConsistencyError("state expectation of a Pauli-word basis element "
                               "must lie in [-1, 1]");
      }
    }
  }
  return inst;
}

double gsim_loss(const GsimInstance& instance, std::span<const double> params) {
  Eigen::VectorXd coeffs = instance.obs_coeffs;
  const double norm_before = coeffs.norm();
  for (const auto& action : instance.reversed_actions) {
    double theta = action.constant;
    if (action.has_slot) {
      if (action.slot >= params.size()) {
        throw DimensionError("parameter vector too short for g-sim instance");
      }
      theta = params[action.slot];
    }
    Eigen::VectorXcd w = action.vectors.adjoint() * coeffs.cast<Complex>();
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      w[i] *= std::polar(1.0, -theta * action.mu[i]);
    }
    coeffs = (action.vectors * w).real();
  }
  // The adjoint representation of a compact group is orthogonal.
  if (std::abs(coeffs.norm() - norm_before) > 1e-9 * (1.0 + norm_before)) {
    throw ConsistencyError("adjoint evolution failed to preserve the coefficient norm");
  }
  const double value = instance.state_coeffs.dot(coeffs);
  const double bound =
      instance.state_coeffs.norm() * coeffs.norm() + 1e-9;
  if (std::abs(value) > bound) {
    throw ConsistencyError("g-sim loss violated the Cauchy-Schwarz bound");
  }
  return value;
}

Eigen::MatrixXd adjoint_gate_action(const Eigen::MatrixXd& adjoint, double angle) {
  check_antisymmetric(adjoint);
  const SkewExp decomp(adjoint);
  const Eigen::Index dim = adjoint.rows();
  Eigen::MatrixXcd phases = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    phases(i, i) = std::polar(1.0, -angle * decomp.mu[i]);
  }
  return (decomp.vectors * phases * decomp.vectors.adjoint()).real();
}

}  // namespace subspace
