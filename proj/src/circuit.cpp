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

#include "subspace/circuit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "subspace/rng.hpp"

namespace subspace {

namespace {

using nlohmann::json;

void validate_generator(const PauliSum& g) {
  if (g.empty()) {
    throw ArgumentError("rotation generator must be a non-empty Pauli sum");
  }
  if (!g.is_hermitian()) {
    throw ArgumentError("rotation generator must be Hermitian (real coefficients)");
  }
  std::vector<const PauliString*> words;
  words.reserve(g.size());
  for (const auto& [w, c] : g) words.push_back(&w);
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      if (!words[i]->commutes_with(*words[j])) {
        throw ArgumentError(
            "rotation generator words must mutually commute; offending pair " +
            words[i]->to_string() + ", " + words[j]->to_string());
      }
    }
  }
}

std::vector<std::size_t> generator_support(const PauliSum& g) {
  std::set<std::size_t> s;
  for (const auto& [w, c] : g) {
    for (std::size_t q : w.support()) s.insert(q);
  }
  return {s.begin(), s.end()};
}

PauliString word(std::size_t n, std::initializer_list<std::pair<std::size_t, char>> letters) {
  PauliString p(n);
  for (const auto& [q, l] : letters) p.set_letter(q, l);
  return p;
}

}  // namespace

std::string clifford_name(CliffordKind kind) {
  switch (kind) {
    case CliffordKind::H: return "H";
    case CliffordKind::S: return "S";
    case CliffordKind::CX: return "CX";
    case CliffordKind::CZ: return "CZ";
    case CliffordKind::Swap: return "SWAP";
  }
  throw ArgumentError("unknown Clifford kind");
}

CliffordKind clifford_from_name(const std::string& name) {
  if (name == "H") return CliffordKind::H;
  if (name == "S") return CliffordKind::S;
  if (name == "CX") return CliffordKind::CX;
  if (name == "CZ") return CliffordKind::CZ;
  if (name == "SWAP") return CliffordKind::Swap;
  throw ArgumentError("unknown Clifford gate name: " + name);
}

Gate Gate::rotation(PauliSum generator, std::size_t slot, std::size_t layer) {
  validate_generator(generator);
  Gate g;
  g.kind = Kind::Rotation;
  g.qubits = generator_support(generator);
  g.generator = std::move(generator);
  g.param_slot = slot;
  g.layer = layer;
  return g;
}

Gate Gate::rotation_const(PauliSum generator, double angle, std::size_t layer) {
  validate_generator(generator);
  Gate g;
  g.kind = Kind::Rotation;
  g.qubits = generator_support(generator);
  g.generator = std::move(generator);
  g.constant_angle = angle;
  g.layer = layer;
  return g;
}

Gate Gate::fixed_clifford(CliffordKind kind, std::vector<std::size_t> qubits,
                          std::size_t layer) {
  const std::size_t arity =
      (kind == CliffordKind::H || kind == CliffordKind::S) ? 1 : 2;
  if (qubits.size() != arity) {
    throw ArgumentError(clifford_name(kind) + " expects " +
                        std::to_string(arity) + " target qubit(s)");
  }
  if (arity == 2 && qubits[0] == qubits[1]) {
    throw ArgumentError("two-qubit Clifford targets must be distinct");
  }
  Gate g;
  g.kind = Kind::Clifford;
  g.clifford = kind;
  g.qubits = std::move(qubits);
  g.layer = layer;
  return g;
}

double Gate::angle(std::span<const double> params) const {
  if (kind != Kind::Rotation) {
    throw UnsupportedError("fixed Clifford gates carry no angle");
  }
  if (constant_angle) return *constant_angle;
  if (*param_slot >= params.size()) {
    throw DimensionError("parameter vector too short for slot " +
                         std::to_string(*param_slot));
  }
  return params[*param_slot];
}

void Circuit::append(Gate gate) {
  if (gate.is_rotation()) {
    if (gate.generator.num_qubits() != n) {
      throw DimensionError("gate generator size does not match circuit");
    }
    if (gate.param_slot.has_value() == gate.constant_angle.has_value()) {
      throw ArgumentError("rotation must have exactly one of slot / constant angle");
    }
    if (gate.param_slot && *gate.param_slot >= n_params) {
      throw ArgumentError("param_slot " + std::to_string(*gate.param_slot) +
                          " out of range (n_params=" + std::to_string(n_params) + ")");
    }
  }
  for (std::size_t q : gate.qubits) {
    if (q >= n) {
      throw ArgumentError("gate target " + std::to_string(q) +
                          " out of range for n=" + std::to_string(n));
    }
  }
  if (!gates.empty() && gate.layer < gates.back().layer) {
    throw ArgumentError("layer tags must be non-decreasing");
  }
  gates.push_back(std::move(gate));
}

Circuit Circuit::bind(std::span<const double> params) const {
  if (params.size() != n_params) {
    throw DimensionError("parameter vector length does not match n_params");
  }
  Circuit bound(n, 0);
  for (const Gate& g : gates) {
    if (g.is_rotation() && g.param_slot) {
      bound.append(Gate::rotation_const(g.generator, params[*g.param_slot], g.layer));
    } else {
      bound.append(g);
    }
  }
  return bound;
}

std::vector<PauliSum> Circuit::generators() const {
  std::vector<PauliSum> gens;
  for (const Gate& g : gates) {
    if (g.is_rotation()) gens.push_back(g.generator);
  }
  return gens;
}

json Circuit::to_json() const {
  json gate_list = json::array();
  for (const Gate& g : gates) {
    json jg;
    if (g.is_rotation()) {
      jg["kind"] = "rotation";
      json gen = json::array();
      std::vector<const PauliString*> order;
      for (const auto& [w, c] : g.generator) order.push_back(&w);
      std::sort(order.begin(), order.end(),
                [](const PauliString* a, const PauliString* b) { return *a < *b; });
      for (const PauliString* w : order) {
        gen.push_back({{"coeff", g.generator.coeff(*w).real()}, {"word", w->to_string()}});
      }
      jg["generator"] = std::move(gen);
      if (g.param_slot) jg["param_slot"] = *g.param_slot;
      if (g.constant_angle) jg["angle"] = *g.constant_angle;
    } else {
      jg["kind"] = "clifford";
      jg["name"] = clifford_name(g.clifford);
    }
    jg["qubits"] = g.qubits;
    jg["layer"] = g.layer;
    gate_list.push_back(std::move(jg));
  }
  return json{{"schema_version", 1},
              {"n", n},
              {"n_params", n_params},
              {"gates", std::move(gate_list)}};
}

Circuit Circuit::from_json(const json& j, const std::string& path) {
  auto require = [&](bool cond, const std::string& field, const std::string& msg) {
    if (!cond) throw ConfigError(path + "." + field, msg);
  };
  require(j.is_object(), "", "expected an object");
  require(j.contains("n") && j["n"].is_number_unsigned(), "n",
          "missing or non-integer qubit count");
  require(j.contains("n_params") && j["n_params"].is_number_unsigned(), "n_params",
          "missing or non-integer parameter count");
  if (j.contains("schema_version")) {
    require(j["schema_version"] == 1, "schema_version", "unsupported schema version");
  }
  Circuit c(j["n"].get<std::size_t>(), j["n_params"].get<std::size_t>());
  require(j.contains("gates") && j["gates"].is_array(), "gates", "missing gate list");
  std::size_t idx = 0;
  for (const json& jg : j["gates"]) {
    const std::string field = "gates[" + std::to_string(idx) + "]";
    require(jg.is_object() && jg.contains("kind"), field, "gate must have a kind");
    const std::string kind = jg["kind"].get<std::string>();
    const std::size_t layer = jg.value("layer", std::size_t{0});
    try {
      if (kind == "rotation") {
        require(jg.contains("generator") && jg["generator"].is_array(), field,
                "rotation needs a generator term list");
        PauliSum gen(c.n);
        for (const json& jt : jg["generator"]) {
          require(jt.contains("coeff") && jt.contains("word"), field,
                  "generator term needs coeff and word");
          gen.add(PauliString::from_string(jt["word"].get<std::string>()),
                  jt["coeff"].get<double>());
        }
        if (jg.contains("param_slot")) {
          c.append(Gate::rotation(std::move(gen), jg["param_slot"].get<std::size_t>(), layer));
        } else {
          require(jg.contains("angle"), field, "rotation needs param_slot or angle");
          c.append(Gate::rotation_const(std::move(gen), jg["angle"].get<double>(), layer));
        }
      } else if (kind == "clifford") {
        require(jg.contains("name") && jg.contains("qubits"), field,
                "clifford needs name and qubits");
        c.append(Gate::fixed_clifford(clifford_from_name(jg["name"].get<std::string>()),
                                      jg["qubits"].get<std::vector<std::size_t>>(), layer));
      } else {
        throw ConfigError(path + "." + field, "unknown gate kind: " + kind);
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(path + "." + field, e.what());
    }
    ++idx;
  }
  return c;
}

// ---------------------------------------------------------------------------
// Parameter distributions.

ParamDistribution ParamDistribution::uniform(double lo, double hi) {
  ParamDistribution d;
  d.base = Uniform{lo, hi};
  return d;
}

ParamDistribution ParamDistribution::discrete(std::vector<double> values) {
  if (values.empty()) {
    throw ArgumentError("discrete parameter set must be non-empty");
  }
  ParamDistribution d;
  d.base = Discrete{std::move(values)};
  return d;
}

ParamDistribution ParamDistribution::gaussian(double mean, double stddev) {
  ParamDistribution d;
  d.base = Gaussian{mean, stddev};
  return d;
}

ParamDistribution ParamDistribution::gaussian_init(std::size_t layers, double c) {
  if (layers == 0) throw ArgumentError("gaussian_init needs layers >= 1");
  return gaussian(0.0, std::sqrt(c / static_cast<double>(layers)));
}

ParamDistribution ParamDistribution::hva_small_angle(std::size_t n, std::size_t terms,
                                                     std::size_t sweeps, double c) {
  const double denom = static_cast<double>(n) * static_cast<double>(terms) *
                       static_cast<double>(sweeps);
  if (denom <= 0) throw ArgumentError("hva_small_angle needs n, terms, sweeps >= 1");
  const double width = c / denom;
  return uniform(-width, width);
}

namespace {

json law_to_json(const ParamDistribution::Law& law) {
  json j;
  if (const auto* u = std::get_if<ParamDistribution::Uniform>(&law)) {
    j = {{"kind", "uniform"}, {"lo", u->lo}, {"hi", u->hi}};
  } else if (const auto* d = std::get_if<ParamDistribution::Discrete>(&law)) {
    j = {{"kind", "discrete"}, {"values", d->values}};
  } else {
    const auto& g = std::get<ParamDistribution::Gaussian>(law);
    j = {{"kind", "gaussian"}, {"mean", g.mean}, {"std", g.stddev}};
  }
  return j;
}

ParamDistribution::Law law_from_json(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("kind")) {
    throw ConfigError(path, "distribution law must be an object with a kind");
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "uniform") {
    if (!j.contains("lo") || !j.contains("hi"))
      throw ConfigError(path, "uniform law needs lo and hi");
    return ParamDistribution::Uniform{j["lo"].get<double>(), j["hi"].get<double>()};
  }
  if (kind == "discrete") {
    if (!j.contains("values") || !j["values"].is_array() || j["values"].empty())
      throw ConfigError(path + ".values", "discrete law needs non-empty values");
    return ParamDistribution::Discrete{j["values"].get<std::vector<double>>()};
  }
  if (kind == "gaussian") {
    if (!j.contains("mean") || !j.contains("std"))
      throw ConfigError(path, "gaussian law needs mean and std");
    return ParamDistribution::Gaussian{j["mean"].get<double>(), j["std"].get<double>()};
  }
  throw ConfigError(path + ".kind", "unknown distribution kind: " + kind);
}

}  // namespace

json ParamDistribution::to_json() const {
  json j = law_to_json(base);
  if (!overrides.empty()) {
    json ov = json::array();
    for (const auto& [slot, law] : overrides) {
      json e = law_to_json(law);
      e["slot"] = slot;
      ov.push_back(std::move(e));
    }
    j["overrides"] = std::move(ov);
  }
  return j;
}

ParamDistribution ParamDistribution::from_json(const json& j, const std::string& path) {
  ParamDistribution d;
  d.base = law_from_json(j, path);
  if (j.contains("overrides")) {
    if (!j["overrides"].is_array())
      throw ConfigError(path + ".overrides", "must be an array");
    for (const json& e : j["overrides"]) {
      if (!e.contains("slot"))
        throw ConfigError(path + ".overrides", "override needs a slot");
      d.overrides[e["slot"].get<std::size_t>()] = law_from_json(e, path + ".overrides");
    }
  }
  return d;
}

std::vector<double> sample_params(const ParamDistribution& dist,
                                  std::size_t n_params, std::uint64_t seed) {
  std::vector<double> params(n_params);
  for (std::size_t slot = 0; slot < n_params; ++slot) {
    const ParamDistribution::Law* law = &dist.base;
    if (const auto it = dist.overrides.find(slot); it != dist.overrides.end()) {
      law = &it->second;
    }
    Rng rng(derive_seed(seed, "param/" + std::to_string(slot)));
    if (const auto* u = std::get_if<ParamDistribution::Uniform>(law)) {
      params[slot] = rng.uniform(u->lo, u->hi);
    } else if (const auto* ds = std::get_if<ParamDistribution::Discrete>(law)) {
      if (ds->values.empty()) throw ArgumentError("discrete parameter set is empty");
      params[slot] = ds->values[rng.uniform_index(ds->values.size())];
    } else {
      const auto& g = std::get<ParamDistribution::Gaussian>(*law);
      params[slot] = rng.normal(g.mean, g.stddev);
    }
  }
  return params;
}

// ---------------------------------------------------------------------------
// Builders.

namespace {

// RY, RY, RZZ, RY, RY on a qubit pair; five fresh slots.
void append_two_qubit_block(Circuit& c, std::size_t a, std::size_t b,
                            std::size_t& slot, std::size_t layer) {
  const std::size_t n = c.n;
  c.append(Gate::rotation(PauliSum::from_word(PauliString::single(n, a, 'Y')), slot++, layer));
  c.append(Gate::rotation(PauliSum::from_word(PauliString::single(n, b, 'Y')), slot++, layer));
  c.append(Gate::rotation(PauliSum::from_word(word(n, {{a, 'Z'}, {b, 'Z'}})), slot++, layer));
  c.append(Gate::rotation(PauliSum::from_word(PauliString::single(n, a, 'Y')), slot++, layer));
  c.append(Gate::rotation(PauliSum::from_word(PauliString::single(n, b, 'Y')), slot++, layer));
}

}  // namespace

Circuit build_shallow_hea(std::size_t n, std::size_t layers, std::uint64_t /*seed_structure*/) {
  if (n < 2) throw ArgumentError("shallow HEA needs n >= 2");
  if (layers < 1) throw ArgumentError("shallow HEA needs at least one layer");
  std::size_t blocks = 0;
  for (std::size_t l = 0; l < layers; ++l) {
    blocks += (l % 2 == 0) ? n / 2 : (n - 1) / 2;
  }
  Circuit c(n, 5 * blocks);
  std::size_t slot = 0;
  for (std::size_t l = 0; l < layers; ++l) {
    const std::size_t first = (l % 2 == 0) ? 0 : 1;
    for (std::size_t q = first; q + 1 < n; q += 2) {
      append_two_qubit_block(c, q, q + 1, slot, l);
    }
  }
  return c;
}

Circuit build_matchgate(std::size_t n, std::size_t layers) {
  if (n < 2) throw ArgumentError("matchgate circuit needs n >= 2");
  const std::size_t per_layer = n + (n - 1);
  Circuit c(n, layers * per_layer);
  std::size_t slot = 0;
  for (std::size_t l = 0; l < layers; ++l) {
    for (std::size_t q = 0; q < n; ++q) {
      c.append(Gate::rotation(PauliSum::from_word(PauliString::single(n, q, 'Z')),
                              slot++, 2 * l));
    }
    for (std::size_t q = 0; q + 1 < n; ++q) {
      c.append(Gate::rotation(PauliSum::from_word(word(n, {{q, 'X'}, {q + 1, 'X'}})),
                              slot++, 2 * l + 1));
    }
  }
  return c;
}

Circuit build_u1_equivariant(std::size_t n, std::size_t layers) {
  if (n < 2) throw ArgumentError("U(1)-equivariant circuit needs n >= 2");
  const std::size_t per_layer = n + (n - 1);
  Circuit c(n, layers * per_layer);
  std::size_t slot = 0;
  for (std::size_t l = 0; l < layers; ++l) {
    for (std::size_t q = 0; q < n; ++q) {
      c.append(Gate::rotation(PauliSum::from_word(PauliString::single(n, q, 'Z')),
                              slot++, 2 * l));
    }
    for (std::size_t q = 0; q + 1 < n; ++q) {
      PauliSum givens(n);
      givens.add(word(n, {{q, 'X'}, {q + 1, 'X'}}), 0.5);
      givens.add(word(n, {{q, 'Y'}, {q + 1, 'Y'}}), 0.5);
      c.append(Gate::rotation(std::move(givens), slot++, 2 * l + 1));
    }
  }
  return c;
}

QcnnCircuit build_qcnn(std::size_t n) {
  if (n < 4 || !std::has_single_bit(n)) {
    throw ArgumentError("QCNN needs n a power of two with n >= 4");
  }
  const std::size_t stages = static_cast<std::size_t>(std::bit_width(n) - 1);
  // Count blocks first: each stage convolves adjacent active pairs.
  std::size_t blocks = 0;
  for (std::size_t active = n; active >= 2; active /= 2) {
    blocks += active / 2;
    if (active == 2) break;
  }
  QcnnCircuit out;
  Circuit c(n, 5 * blocks);
  std::vector<std::size_t> active(n);
  for (std::size_t q = 0; q < n; ++q) active[q] = q;
  std::size_t slot = 0;
  for (std::size_t s = 0; s < stages; ++s) {
    for (std::size_t i = 0; i + 1 < active.size(); i += 2) {
      append_two_qubit_block(c, active[i], active[i + 1], slot, s);
    }
    if (active.size() > 2) {
      // Pool: trace out the first qubit of each pair, keep the second.
      std::vector<std::size_t> dropped, kept;
      for (std::size_t i = 0; i < active.size(); i += 2) {
        dropped.push_back(active[i]);
        kept.push_back(active[i + 1]);
      }
      out.pooled_per_stage.push_back(std::move(dropped));
      active = std::move(kept);
    } else {
      out.pooled_per_stage.emplace_back();
    }
  }
  out.final_active = active;
  out.circuit = std::move(c);
  return out;
}

Circuit build_hva(const std::vector<PauliSum>& hamiltonian_terms, std::size_t sweeps) {
  if (hamiltonian_terms.empty()) throw ArgumentError("HVA needs at least one term");
  const std::size_t n = hamiltonian_terms.front().num_qubits();
  for (const PauliSum& h : hamiltonian_terms) {
    if (h.num_qubits() != n) throw DimensionError("HVA terms act on different sizes");
    if (!h.is_hermitian()) throw ArgumentError("HVA terms must be Hermitian");
  }
  Circuit c(n, sweeps * hamiltonian_terms.size());
  std::size_t slot = 0;
  for (std::size_t l = 0; l < sweeps; ++l) {
    for (const PauliSum& h : hamiltonian_terms) {
      c.append(Gate::rotation(h, slot++, l));
    }
  }
  return c;
}

Circuit build_sn_equivariant(std::size_t n, std::size_t layers) {
  if (n < 2) throw ArgumentError("S_n-equivariant circuit needs n >= 2");
  PauliSum sum_x(n), sum_y(n), sum_zz(n);
  for (std::size_t q = 0; q < n; ++q) {
    sum_x.add(PauliString::single(n, q, 'X'), 1.0);
    sum_y.add(PauliString::single(n, q, 'Y'), 1.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      sum_zz.add(word(n, {{i, 'Z'}, {j, 'Z'}}), 1.0);
    }
  }
  Circuit c(n, 3 * layers);
  std::size_t slot = 0;
  for (std::size_t l = 0; l < layers; ++l) {
    c.append(Gate::rotation(sum_x, slot++, l));
    c.append(Gate::rotation(sum_y, slot++, l));
    c.append(Gate::rotation(sum_zz, slot++, l));
  }
  return c;
}

Circuit build_rot_cz(std::size_t n, std::size_t layers) {
  if (n < 2) throw ArgumentError("rot-CZ ladder needs n >= 2");
  Circuit c(n, n * layers);
  std::size_t slot = 0;
  for (std::size_t l = 0; l < layers; ++l) {
    const char axis = (l % 2 == 0) ? 'Y' : 'X';
    for (std::size_t q = 0; q < n; ++q) {
      c.append(Gate::rotation(PauliSum::from_word(PauliString::single(n, q, axis)),
                              slot++, 2 * l));
    }
    const std::size_t first = l % 2;
    for (std::size_t q = first; q + 1 < n; q += 2) {
      c.append(Gate::fixed_clifford(CliffordKind::CZ, {q, q + 1}, 2 * l + 1));
    }
  }
  return c;
}

}  // namespace subspace
