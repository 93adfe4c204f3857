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

#include "subspace/lie.hpp"

#include <cmath>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace subspace {

namespace {

constexpr double kRankTol = 1e-10;
constexpr double kClosureTol = 1e-8;

// Hermitian-preserving bracket: -i [a, b].  For Hermitian inputs with real
// coefficients the result again has real coefficients.
PauliSum bracket(const PauliSum& a, const PauliSum& b) {
  PauliSum c = commutator(a, b);
  c *= Complex(0, -1);
  return c;
}

// One modified Gram-Schmidt sweep; returns the residual norm.
double orthogonalize(PauliSum& v, const std::vector<PauliSum>& basis) {
  for (const PauliSum& b : basis) {
    const Complex overlap = hs_inner(b, v);
    if (overlap != Complex(0, 0)) v.axpy(-overlap, b);
  }
  v.prune();
  return v.norm2();
}

// Index from canonical word to the basis elements containing it; makes
// projections O(|terms|) instead of O(dim * |terms|).
struct WordIndex {
  std::unordered_map<PauliString, std::vector<std::pair<std::size_t, double>>,
                     PauliStringHash>
      entries;

  explicit WordIndex(const std::vector<PauliSum>& basis) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (const auto& [w, c] : basis[i]) {
        entries[w].emplace_back(i, c.real());
      }
    }
  }

  // Coefficients <B_a, v> for all a at once (real inputs).
  Eigen::VectorXd project(const PauliSum& v, std::size_t dim) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(dim);
    for (const auto& [w, c] : v) {
      const auto it = entries.find(w);
      if (it == entries.end()) continue;
      for (const auto& [idx, bc] : it->second) {
        out[idx] += bc * c.real();
      }
    }
    return out;
  }
};

void check_hermitian_inputs(const std::vector<PauliSum>& generators) {
  if (generators.empty()) {
    throw ArgumentError("lie_closure needs at least one generator");
  }
  const std::size_t n = generators.front().num_qubits();
  for (const PauliSum& g : generators) {
    if (g.num_qubits() != n) {
      throw DimensionError("generators act on different qubit counts");
    }
    if (!g.is_hermitian()) {
      throw ArgumentError("lie_closure generators must be Hermitian");
    }
  }
}

}  // namespace

LieBasis lie_closure(const std::vector<PauliSum>& generators, std::size_t dim_cap) {
  check_hermitian_inputs(generators);
  LieBasis out;
  out.n = generators.front().num_qubits();

  auto try_insert = [&](PauliSum candidate) -> bool {
    orthogonalize(candidate, out.basis);
    const double norm = orthogonalize(candidate, out.basis);  // re-orthogonalize
    if (norm <= kRankTol) return false;
    candidate *= 1.0 / norm;
    candidate.prune();
    if (out.basis.size() >= dim_cap) {
      throw ResourceError("lie_closure dimension cap " + std::to_string(dim_cap) +
                              " exceeded; the algebra is presumed super-polynomial",
                          out.basis.size());
    }
    out.basis.push_back(std::move(candidate));
    return true;
  };

  for (const PauliSum& g : generators) try_insert(g);

  // Right-nested brackets with the generators span the closure, so it is
  // enough to commute every new element against the generator set.
  std::size_t next = 0;
  while (next < out.basis.size()) {
    const std::size_t current = next++;
    for (const PauliSum& g : generators) {
      PauliSum br = bracket(g, out.basis[current]);
      if (br.empty()) continue;
      try_insert(std::move(br));
    }
  }
  return out;
}

const std::vector<LieBasis::FEntry>& structure_constants(LieBasis& basis) {
  const std::size_t dim = basis.dim();
  const WordIndex index(basis.basis);
  basis.f.clear();

  std::vector<std::vector<LieBasis::FEntry>> per_pair(dim * dim);
  bool closed = true;
#pragma omp parallel for schedule(dynamic) collapse(2)
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      if (a >= b) continue;  // antisymmetry fills the rest
      PauliSum br = bracket(basis.basis[a], basis.basis[b]);
      if (br.empty()) continue;
      const Eigen::VectorXd coeffs = index.project(br, dim);
      // Residual of the bracket outside the span.
      for (std::size_t c = 0; c < dim; ++c) {
        if (coeffs[c] != 0.0) br.axpy(-coeffs[c], basis.basis[c]);
      }
      br.prune();
      if (br.norm2() > kClosureTol) {
#pragma omp atomic write
        closed = false;
      }
      auto& list = per_pair[a * dim + b];
      for (std::size_t c = 0; c < dim; ++c) {
        if (std::abs(coeffs[c]) > 1e-12) {
          list.push_back({a, b, c, coeffs[c]});
        }
      }
    }
  }
  if (!closed) {
    throw ConsistencyError("basis is not closed under the bracket (residual > 1e-8)");
  }
  for (std::size_t ab = 0; ab < per_pair.size(); ++ab) {
    for (const auto& e : per_pair[ab]) {
      basis.f.push_back(e);
      basis.f.push_back({e.b, e.a, e.c, -e.value});
    }
  }
  return basis.f;
}

Eigen::MatrixXd adjoint_generator(const PauliSum& h, const LieBasis& basis) {
  if (h.num_qubits() != basis.n) {
    throw DimensionError("operator size does not match basis");
  }
  const std::size_t dim = basis.dim();
  const WordIndex index(basis.basis);

  // Require H in the span.
  {
    PauliSum residual = h;
    const Eigen::VectorXd coeffs = index.project(h, dim);
    for (std::size_t c = 0; c < dim; ++c) {
      if (coeffs[c] != 0.0) residual.axpy(-coeffs[c], basis.basis[c]);
    }
    residual.prune();
    if (residual.norm2() > kClosureTol) {
      throw ConsistencyError("operator lies outside the algebra span (residual " +
                             std::to_string(residual.norm2()) + ")");
    }
  }

  Eigen::MatrixXd ad = Eigen::MatrixXd::Zero(dim, dim);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t b = 0; b < dim; ++b) {
    // i [H, B_b] = -bracket(H, B_b).
    PauliSum br = bracket(h, basis.basis[b]);
    if (br.empty()) continue;
    const Eigen::VectorXd col = index.project(br, dim);
    for (std::size_t c = 0; c < dim; ++c) ad(c, b) = -col[c];
  }
  return ad;
}

AlgebraProjection project_onto_algebra(const PauliSum& a, const LieBasis& basis) {
  if (a.num_qubits() != basis.n) {
    throw DimensionError("operator size does not match basis");
  }
  AlgebraProjection out;
  const WordIndex index(basis.basis);
  out.coeffs = index.project(a, basis.dim());
  PauliSum residual = a;
  for (std::size_t c = 0; c < basis.dim(); ++c) {
    if (out.coeffs[c] != 0.0) residual.axpy(-out.coeffs[c], basis.basis[c]);
  }
  residual.prune();
  out.residual = residual.norm2();
  return out;
}

nlohmann::json LieBasis::to_json() const {
  nlohmann::json jb = nlohmann::json::array();
  for (const PauliSum& b : basis) jb.push_back(b.to_text());
  nlohmann::json jf = nlohmann::json::array();
  for (const FEntry& e : f) {
    jf.push_back({{"a", e.a}, {"b", e.b}, {"c", e.c}, {"value", e.value}});
  }
  return nlohmann::json{
      {"schema_version", 1}, {"n", n}, {"dim", dim()}, {"basis", jb}, {"f", jf}};
}

LieBasis LieBasis::from_json(const nlohmann::json& j) {
  LieBasis out;
  out.n = j.at("n").get<std::size_t>();
  for (const auto& jb : j.at("basis")) {
    out.basis.push_back(PauliSum::from_text(jb.get<std::string>(), out.n));
  }
  if (j.contains("f")) {
    for (const auto& je : j["f"]) {
      out.f.push_back({je.at("a").get<std::size_t>(), je.at("b").get<std::size_t>(),
                       je.at("c").get<std::size_t>(), je.at("value").get<double>()});
    }
  }
  return out;
}

}  // namespace subspace
