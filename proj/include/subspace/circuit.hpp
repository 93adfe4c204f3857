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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "subspace/pauli.hpp"

namespace subspace {

enum class CliffordKind { H, S, CX, CZ, Swap };

std::string clifford_name(CliffordKind kind);
CliffordKind clifford_from_name(const std::string& name);

/// One circuit element: a parameterized Pauli rotation exp(-i theta G) or a
/// fixed Clifford gate.
///
/// G is a Hermitian Pauli sum whose words mutually commute, so the
/// exponential factorizes exactly into single-word rotations.  Single-word
/// generators are the common case; Givens rotations and Hamiltonian-term
/// exponentials carry two or more words under one angle.
struct Gate {
  enum class Kind { Rotation, Clifford };

  Kind kind = Kind::Rotation;
  PauliSum generator;                      // Rotation only
  std::optional<std::size_t> param_slot;   // exactly one of these two
  std::optional<double> constant_angle;    // is set for rotations
  CliffordKind clifford = CliffordKind::CZ;  // Clifford only
  std::vector<std::size_t> qubits;         // support (derived for rotations)
  std::size_t layer = 0;

  static Gate rotation(PauliSum generator, std::size_t slot, std::size_t layer);
  static Gate rotation_const(PauliSum generator, double angle, std::size_t layer);
  static Gate fixed_clifford(CliffordKind kind, std::vector<std::size_t> qubits,
                             std::size_t layer);

  bool is_rotation() const { return kind == Kind::Rotation; }

  /// Resolved angle for this gate given the parameter vector.
  double angle(std::span<const double> params) const;
};

/// An ordered gate list with a parameter-vector length and per-gate layer
/// tags (non-decreasing; used for light-cone analysis).
struct Circuit {
  std::size_t n = 0;
  std::size_t n_params = 0;
  std::vector<Gate> gates;

  Circuit() = default;
  Circuit(std::size_t n_qubits, std::size_t num_params)
      : n(n_qubits), n_params(num_params) {}

  void append(Gate gate);

  /// Returns a parameter-free copy with every slot bound to its value.
  Circuit bind(std::span<const double> params) const;

  /// Generators of all rotation gates, in order.
  std::vector<PauliSum> generators() const;

  nlohmann::json to_json() const;
  static Circuit from_json(const nlohmann::json& j, const std::string& path = "circuit");
};

/// Per-slot parameter sampling law.  Sampling is a pure function of
/// (seed, slot index).
struct ParamDistribution {
  struct Uniform {
    double lo, hi;
  };
  struct Discrete {
    std::vector<double> values;
  };
  struct Gaussian {
    double mean, stddev;
  };
  using Law = std::variant<Uniform, Discrete, Gaussian>;

  Law base = Uniform{0.0, 6.283185307179586476925286766559};
  std::map<std::size_t, Law> overrides;

  static ParamDistribution uniform(double lo, double hi);
  static ParamDistribution discrete(std::vector<double> values);
  static ParamDistribution gaussian(double mean, double stddev);

  /// Gaussian init for L-layer circuits: mean 0, stddev sqrt(c / L).
  static ParamDistribution gaussian_init(std::size_t layers, double c = 0.25);

  /// Small-angle init for an n-qubit, M-term, L-sweep variational circuit:
  /// uniform on [-c/(n M L), +c/(n M L)].
  static ParamDistribution hva_small_angle(std::size_t n, std::size_t terms,
                                           std::size_t sweeps,
                                           double c = 3.14159265358979323846);

  nlohmann::json to_json() const;
  static ParamDistribution from_json(const nlohmann::json& j,
                                     const std::string& path = "distribution");
};

std::vector<double> sample_params(const ParamDistribution& dist,
                                  std::size_t n_params, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Ansatz builders.

/// Brickwork hardware-efficient circuit: layer l applies two-qubit blocks on
/// pairs (0,1),(2,3),... for even l and (1,2),(3,4),... for odd l.  Each
/// block is RY, RY, RZZ, RY, RY with five distinct slots.
Circuit build_shallow_hea(std::size_t n, std::size_t layers,
                          std::uint64_t seed_structure = 0);

/// Alternating layers of Z rotations on every qubit and XX rotations on
/// nearest neighbours, repeated `layers` times.
Circuit build_matchgate(std::size_t n, std::size_t layers);

/// Layers of Z rotations and two-qubit Givens rotations with generator
/// (X_j X_{j+1} + Y_j Y_{j+1}) / 2; every gate commutes with sum_j Z_j.
Circuit build_u1_equivariant(std::size_t n, std::size_t layers);

struct QcnnCircuit {
  Circuit circuit;
  /// Qubits discarded (traced out) after each stage.
  std::vector<std::vector<std::size_t>> pooled_per_stage;
  /// Active qubits after the last stage (always two).
  std::vector<std::size_t> final_active;
};

/// Convolution + pooling stages for n a power of two (n >= 4).  Pooling is
/// trace-out: discarded qubits stay in the state but are excluded from
/// observable support.
QcnnCircuit build_qcnn(std::size_t n);

/// L sweeps over the term exponentials exp(-i theta_{l,i} H_i); each sweep
/// visits every term once with its own slot.  Terms must be Hermitian with
/// internally commuting words.
Circuit build_hva(const std::vector<PauliSum>& hamiltonian_terms,
                  std::size_t sweeps);

/// Permutation-equivariant layers of collective rotations: per layer one
/// slot each for sum_j X_j, sum_j Y_j and sum_{i<j} Z_i Z_j.
Circuit build_sn_equivariant(std::size_t n, std::size_t layers);

/// Deep ladder of single-qubit rotations (axes alternating Y/X by layer)
/// followed by brick CZ entanglers; the usual target of Gaussian
/// small-angle initialization.
Circuit build_rot_cz(std::size_t n, std::size_t layers);

}  // namespace subspace
