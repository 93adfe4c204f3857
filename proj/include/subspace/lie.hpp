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

#include <cstddef>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "subspace/pauli.hpp"

namespace subspace {

/// Orthonormal basis of a dynamical Lie algebra with structure constants
/// [B_a, B_b] = i sum_c f_{abc} B_c.
///
/// Basis elements are Hermitian Pauli sums, orthonormal under the normalized
/// Hilbert-Schmidt inner product, and stored sparsely (never as dense
/// matrices), so purely algebraic work scales past the dense-oracle range.
struct LieBasis {
  std::size_t n = 0;
  std::vector<PauliSum> basis;

  struct FEntry {
    std::size_t a, b, c;
    double value;
  };
  /// Sparse structure constants; filled by structure_constants().
  std::vector<FEntry> f;

  std::size_t dim() const { return basis.size(); }

  nlohmann::json to_json() const;
  static LieBasis from_json(const nlohmann::json& j);
};

inline constexpr std::size_t kDefaultDimCap = 4096;

/// Lie closure <iG>_Lie of a Hermitian generator set: iteratively commutes
/// basis elements with the generators, orthonormalizing (modified
/// Gram-Schmidt with a re-orthogonalization pass) and keeping any component
/// with residual norm above the rank tolerance, until a fixed point.
///
/// Throws ResourceError carrying the partial dimension if the cap is hit;
/// that signals an (exponentially) large DLA.
LieBasis lie_closure(const std::vector<PauliSum>& generators,
                     std::size_t dim_cap = kDefaultDimCap);

/// f_{abc} = -i <B_c, [B_a, B_b]>; real and antisymmetric in (a, b) by
/// construction.  Also verifies closure: if any pair bracket has residual
/// norm > 1e-8 outside the span, throws ConsistencyError.  Fills basis.f and
/// returns a reference to it.
const std::vector<LieBasis::FEntry>& structure_constants(LieBasis& basis);

/// (ad_H)_{cb} = <B_c, i [H, B_b]>: the antisymmetric generator of
/// coefficient flow under Heisenberg evolution exp(i theta H) . exp(-i theta H).
/// H must lie in the span of the basis (residual < 1e-8).
Eigen::MatrixXd adjoint_generator(const PauliSum& h, const LieBasis& basis);

struct AlgebraProjection {
  Eigen::VectorXd coeffs;
  double residual = 0.0;
};

/// Coefficients v_a = <B_a, A> and the norm of A - sum_a v_a B_a.
AlgebraProjection project_onto_algebra(const PauliSum& a, const LieBasis& basis);

}  // namespace subspace
