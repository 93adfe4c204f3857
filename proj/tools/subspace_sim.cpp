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

// Batch experiment runner: builds circuits, runs engines, compares against
// the exact oracle, and emits JSON/CSV reports.  One experiment per process;
// identical config + seed gives byte-identical output files.

#include <omp.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "subspace/diagnostics.hpp"
#include "subspace/gsim.hpp"
#include "subspace/hamming.hpp"
#include "subspace/lightcone.hpp"
#include "subspace/lie.hpp"
#include "subspace/matchgate.hpp"
#include "subspace/pauli_prop.hpp"
#include "subspace/rng.hpp"
#include "subspace/shadows.hpp"
#include "subspace/statevector.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace subspace;

constexpr const char* kToolVersion = "subspace-sim 0.1.0";

// ---------------------------------------------------------------------------
// Config plumbing.

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed_override;
  std::optional<int> threads_override;
  std::optional<std::string> out_override;
};

json load_config(const CommonOptions& opts) {
  json config = json::object();
  if (!opts.config_path.empty()) {
    std::ifstream in(opts.config_path);
    if (!in) throw ConfigError("config", "cannot open " + opts.config_path);
    try {
      config = json::parse(in);
    } catch (const std::exception& e) {
      throw ConfigError("config", std::string("invalid JSON: ") + e.what());
    }
  }
  if (!config.is_object()) throw ConfigError("config", "must be a JSON object");
  if (config.contains("schema_version") && config["schema_version"] != 1) {
    throw ConfigError("schema_version", "unsupported schema version");
  }
  if (opts.seed_override) config["seed"] = *opts.seed_override;
  if (opts.out_override) config["out"] = *opts.out_override;
  if (opts.threads_override) config["threads"] = *opts.threads_override;
  if (!config.contains("seed")) config["seed"] = 1;
  if (!config.contains("out")) config["out"] = ".";
  return config;
}

void apply_threads(const json& config) {
  int threads = 0;
  if (config.contains("threads")) {
    threads = config["threads"].get<int>();
  } else if (const char* env = std::getenv("SUBSPACE_SIM_THREADS")) {
    threads = std::atoi(env);
  }
  if (threads > 0) omp_set_num_threads(threads);
}

const json& require_field(const json& config, const std::string& key) {
  if (!config.contains(key)) throw ConfigError(key, "missing required field");
  return config[key];
}

// ---------------------------------------------------------------------------
// Spec parsing: circuits, observables, distributions, state preparations.

std::vector<PauliSum> parse_terms(const json& spec, std::size_t n,
                                  const std::string& path) {
  std::vector<PauliSum> terms;
  if (!spec.is_array()) throw ConfigError(path, "expected an array of Pauli-sum texts");
  for (const auto& t : spec) {
    terms.push_back(PauliSum::from_text(t.get<std::string>(), n));
  }
  return terms;
}

Circuit parse_circuit(const json& spec, const std::string& path) {
  if (!spec.is_object()) {
    throw ConfigError(path, "expected an object with builder or path");
  }
  if (spec.contains("path")) {
    std::ifstream in(spec["path"].get<std::string>());
    if (!in) throw ConfigError(path + ".path", "cannot open circuit file");
    json j;
    try {
      j = json::parse(in);
    } catch (const std::exception& e) {
      throw ConfigError(path + ".path", std::string("invalid JSON: ") + e.what());
    }
    return Circuit::from_json(j, path);
  }
  if (spec.contains("inline")) {
    return Circuit::from_json(spec["inline"], path + ".inline");
  }
  if (!spec.contains("builder")) {
    throw ConfigError(path, "circuit spec needs builder, path, or inline");
  }
  const std::string builder = spec["builder"].get<std::string>();
  const auto get_n = [&]() -> std::size_t {
    if (!spec.contains("n")) throw ConfigError(path + ".n", "missing qubit count");
    return spec["n"].get<std::size_t>();
  };
  const auto layers = [&](std::size_t fallback) -> std::size_t {
    return spec.value("layers", fallback);
  };
  try {
    if (builder == "shallow_hea") return build_shallow_hea(get_n(), layers(1));
    if (builder == "matchgate") return build_matchgate(get_n(), layers(1));
    if (builder == "u1") return build_u1_equivariant(get_n(), layers(1));
    if (builder == "sn") return build_sn_equivariant(get_n(), layers(1));
    if (builder == "rot_cz") return build_rot_cz(get_n(), layers(1));
    if (builder == "qcnn") return build_qcnn(get_n()).circuit;
    if (builder == "hva") {
      const std::size_t n = get_n();
      return build_hva(parse_terms(require_field(spec, "terms"), n, path + ".terms"),
                       layers(1));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(path, e.what());
  }
  throw ConfigError(path + ".builder", "unknown builder: " + builder);
}

PauliSum parse_observable(const json& spec, std::size_t n, const std::string& path) {
  std::string text;
  if (spec.is_string()) {
    text = spec.get<std::string>();
  } else if (spec.is_object() && spec.contains("path")) {
    std::ifstream in(spec["path"].get<std::string>());
    if (!in) throw ConfigError(path + ".path", "cannot open observable file");
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  } else {
    throw ConfigError(path, "expected Pauli-sum text or {path}");
  }
  try {
    const PauliSum obs = PauliSum::from_text(text, n);
    if (obs.num_qubits() != n) {
      throw ConfigError(path, "observable acts on " + std::to_string(obs.num_qubits()) +
                                  " qubits, circuit has " + std::to_string(n));
    }
    return obs;
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(path, e.what());
  }
}

ParamDistribution parse_distribution(const json& config) {
  if (!config.contains("distribution")) {
    return ParamDistribution::uniform(0.0, 6.283185307179586476925286766559);
  }
  return ParamDistribution::from_json(config["distribution"], "distribution");
}

// A bound (parameter-free) preparation circuit; {} means |0...0>.
Circuit parse_state_prep(const json& config, std::size_t n) {
  if (!config.contains("state_prep") || config["state_prep"].is_null()) {
    return Circuit(n, 0);
  }
  const json& spec = config["state_prep"];
  Circuit prep = parse_circuit(spec, "state_prep");
  if (prep.n != n) {
    throw ConfigError("state_prep", "preparation acts on a different qubit count");
  }
  if (prep.n_params > 0) {
    if (!spec.contains("params")) {
      throw ConfigError("state_prep.params",
                        "parameterized preparation needs bound parameter values");
    }
    const auto values = spec["params"].get<std::vector<double>>();
    if (values.size() != prep.n_params) {
      throw ConfigError("state_prep.params", "expected " +
                                                 std::to_string(prep.n_params) +
                                                 " values");
    }
    prep = prep.bind(values);
  }
  return prep;
}

// ---------------------------------------------------------------------------
// Output plumbing.

std::filesystem::path ensure_out_dir(const json& config) {
  const std::filesystem::path dir = config["out"].get<std::string>();
  std::filesystem::create_directories(dir);
  return dir;
}

void write_file(const std::filesystem::path& file, const std::string& contents) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error("cannot write " + file.string());
  out << contents;
}

void write_json_report(const std::filesystem::path& file, const json& config,
                       json body) {
  json report;
  report["schema_version"] = 1;
  report["tool_version"] = kToolVersion;
  report["config"] = config;
  for (auto& [key, value] : body.items()) report[key] = std::move(value);
  write_file(file, report.dump(2) + "\n");
}

std::string format_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Engine dispatch for simulate/compare.

struct EngineContext {
  Circuit circuit;
  PauliSum obs{0};
  Circuit prep{0, 0};
  json engine_options;
  std::uint64_t prep_bits = 0;  // hamming
};

using LossFn = std::function<double(std::span<const double>)>;

LossFn make_engine(const std::string& engine, EngineContext& ctx) {
  if (engine == "oracle") {
    return [&ctx](std::span<const double> params) {
      return loss(ctx.prep, ctx.circuit, params, ctx.obs);
    };
  }
  if (engine == "gsim") {
    auto basis = std::make_shared<LieBasis>(lie_closure(
        ctx.circuit.generators(), ctx.engine_options.value("dim_cap", kDefaultDimCap)));
    auto state = std::make_shared<DenseState>(run_circuit(ctx.prep, {}));
    auto source = std::make_shared<OracleExpectationSource>(*state);
    auto instance =
        std::make_shared<GsimInstance>(prepare_instance(ctx.circuit, ctx.obs, basis, *source));
    return [instance, state, source](std::span<const double> params) {
      return gsim_loss(*instance, params);
    };
  }
  if (engine == "lightcone") {
    std::set<std::size_t> support;
    for (const auto& [w, c] : ctx.obs) {
      for (std::size_t q : w.support()) support.insert(q);
    }
    const std::vector<std::size_t> support_vec(support.begin(), support.end());
    auto cone = std::make_shared<LightCone>(backward_cone(ctx.circuit, support_vec));
    const DenseState rho_full = run_circuit(ctx.prep, {});
    auto rho = std::make_shared<Eigen::MatrixXcd>(
        reduced_density(rho_full, cone->qubit_set,
                        ctx.engine_options.value("cone_cap", kDefaultConeCap)));
    return [cone, rho, &ctx](std::span<const double> params) {
      return reduced_loss(*cone, *rho, ctx.obs, params);
    };
  }
  if (engine == "hamming") {
    return [&ctx](std::span<const double> params) {
      return sector_loss(ctx.prep_bits, ctx.circuit, params, ctx.obs);
    };
  }
  if (engine == "matchgate") {
    auto monomials = std::make_shared<std::vector<std::pair<MajoranaMonomial, double>>>(
        pauli_to_monomials(ctx.obs));
    const std::size_t eta = monomials->empty() ? 0 : monomials->front().first.degree();
    const DenseState rho = run_circuit(ctx.prep, {});
    OracleExpectationSource source(rho);
    auto correlations = std::make_shared<std::unordered_map<std::uint64_t, double>>(
        acquire_correlations(ctx.circuit.n, eta, source));
    return [monomials, correlations, &ctx](std::span<const double> params) {
      return module_loss(ctx.circuit, params, *monomials, *correlations);
    };
  }
  if (engine == "pauli-prop") {
    auto policy = std::make_shared<TruncationPolicy>();
    if (ctx.engine_options.contains("max_weight")) {
      policy->max_weight = ctx.engine_options["max_weight"].get<std::size_t>();
    }
    policy->min_coeff = ctx.engine_options.value("min_coeff", 0.0);
    if (ctx.engine_options.contains("max_terms")) {
      policy->max_terms = ctx.engine_options["max_terms"].get<std::size_t>();
    }
    auto state = std::make_shared<DenseState>(run_circuit(ctx.prep, {}));
    return [policy, state, &ctx](std::span<const double> params) {
      const PauliSum propagated = backpropagate(ctx.obs, ctx.circuit, params, *policy);
      OracleExpectationSource source(*state);
      return loss_from_expectations(propagated, source).value;
    };
  }
  throw ConfigError("engine", "unknown engine: " + engine);
}

EngineContext make_context(const json& config) {
  EngineContext ctx;
  ctx.circuit = parse_circuit(require_field(config, "circuit"), "circuit");
  ctx.obs = parse_observable(require_field(config, "observable"), ctx.circuit.n,
                             "observable");
  ctx.prep = parse_state_prep(config, ctx.circuit.n);
  ctx.engine_options = config.value("engine_options", json::object());
  if (config.contains("state_prep") && config["state_prep"].is_object() &&
      config["state_prep"].contains("bits")) {
    const std::string bits = config["state_prep"]["bits"].get<std::string>();
    if (bits.size() != ctx.circuit.n) {
      throw ConfigError("state_prep.bits", "bitstring length must equal n");
    }
    ctx.prep_bits = 0;
    for (std::size_t q = 0; q < bits.size(); ++q) {
      if (bits[q] == '1') ctx.prep_bits |= 1ULL << q;
      else if (bits[q] != '0') throw ConfigError("state_prep.bits", "bad bit");
    }
    // Oracle-side preparation of the same basis state, for cross-engine runs.
    Circuit basis_prep(ctx.circuit.n, 0);
    for (std::size_t q = 0; q < bits.size(); ++q) {
      if (bits[q] == '1') {
        basis_prep.append(Gate::rotation_const(
            PauliSum::from_word(PauliString::single(ctx.circuit.n, q, 'Y')),
            1.5707963267948966, 0));
        basis_prep.append(Gate::rotation_const(
            PauliSum::from_word(PauliString::single(ctx.circuit.n, q, 'Z')),
            -1.5707963267948966, 0));
      }
    }
    ctx.prep = std::move(basis_prep);
  }
  return ctx;
}

// ---------------------------------------------------------------------------
// Commands.

int run_dla(const json& config) {
  const Circuit circuit = parse_circuit(require_field(config, "circuit"), "circuit");
  LieBasis basis =
      lie_closure(circuit.generators(), config.value("dim_cap", kDefaultDimCap));
  json body;
  body["dim"] = basis.dim();
  if (config.value("emit_basis", false)) {
    structure_constants(basis);
    body["lie_basis"] = basis.to_json();
  }
  write_json_report(ensure_out_dir(config) / "dla.json", config, std::move(body));
  return 0;
}

int run_simulate(const json& config) {
  EngineContext ctx = make_context(config);
  const std::string engine = config.value("engine", std::string("oracle"));
  const LossFn evaluate = make_engine(engine, ctx);
  const ParamDistribution dist = parse_distribution(config);
  const std::size_t samples = config.value("samples", 1);
  const std::uint64_t seed = config["seed"].get<std::uint64_t>();

  std::vector<double> losses(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    const auto params = sample_params(
        dist, ctx.circuit.n_params,
        derive_seed(seed, "simulate/sample=" + std::to_string(s)));
    losses[s] = evaluate(params);
  }

  json body;
  body["engine"] = engine;
  body["losses"] = losses;
  const auto dir = ensure_out_dir(config);
  write_json_report(dir / "simulate.json", config, std::move(body));
  std::string csv = "sample,loss\r\n";
  for (std::size_t s = 0; s < samples; ++s) {
    csv += std::to_string(s) + "," + format_g(losses[s]) + "\r\n";
  }
  write_file(dir / "simulate.csv", csv);
  return 0;
}

int run_compare(const json& config) {
  const json& engines = require_field(config, "engines");
  if (!engines.is_array() || engines.size() != 2) {
    throw ConfigError("engines", "expected exactly two engine names");
  }
  EngineContext ctx_a = make_context(config);
  EngineContext ctx_b = make_context(config);
  const LossFn eval_a = make_engine(engines[0].get<std::string>(), ctx_a);
  const LossFn eval_b = make_engine(engines[1].get<std::string>(), ctx_b);

  const ParamDistribution dist = parse_distribution(config);
  const std::size_t samples = config.value("samples", 20);
  const std::uint64_t seed = config["seed"].get<std::uint64_t>();
  const double tolerance = config.value("tolerance", 1e-8);

  std::vector<double> a(samples), b(samples);
  double max_diff = 0.0, mean_diff = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto params = sample_params(
        dist, ctx_a.circuit.n_params,
        derive_seed(seed, "compare/sample=" + std::to_string(s)));
    a[s] = eval_a(params);
    b[s] = eval_b(params);
    const double diff = std::abs(a[s] - b[s]);
    max_diff = std::max(max_diff, diff);
    mean_diff += diff;
  }
  mean_diff /= double(samples);

  json body;
  body["engines"] = engines;
  body["max_abs_diff"] = max_diff;
  body["mean_abs_diff"] = mean_diff;
  body["tolerance"] = tolerance;
  body["pass"] = max_diff <= tolerance;
  const auto dir = ensure_out_dir(config);
  write_json_report(dir / "compare.json", config, std::move(body));
  std::string csv = "sample,loss_a,loss_b,abs_diff\r\n";
  for (std::size_t s = 0; s < samples; ++s) {
    csv += std::to_string(s) + "," + format_g(a[s]) + "," + format_g(b[s]) + "," +
           format_g(std::abs(a[s] - b[s])) + "\r\n";
  }
  write_file(dir / "compare.csv", csv);
  return max_diff <= tolerance ? 0 : 1;
}

int run_variance_scan(const json& config) {
  const json& family_spec = require_field(config, "circuit_family");
  const json& obs_spec = require_field(config, "observable_family");

  LossFamily family;
  family.n_params = [&family_spec](std::size_t n) {
    json spec = family_spec;
    spec["n"] = n;
    return parse_circuit(spec, "circuit_family").n_params;
  };
  family.loss = [&family_spec, &obs_spec](std::size_t n,
                                          std::span<const double> params) {
    json spec = family_spec;
    spec["n"] = n;
    const Circuit circuit = parse_circuit(spec, "circuit_family");
    PauliSum obs(n);
    const std::string kind = obs_spec.value("kind", std::string("single_z"));
    if (kind == "single_z") {
      obs.add(PauliString::single(n, obs_spec.value("qubit", 0), 'Z'), 1.0);
    } else if (kind == "global_z") {
      PauliString w(n);
      for (std::size_t q = 0; q < n; ++q) w.set_letter(q, 'Z');
      obs.add(w, 1.0);
    } else {
      throw ConfigError("observable_family.kind", "unknown kind: " + kind);
    }
    return loss(Circuit(n, 0), circuit, params, obs);
  };

  VarianceScanConfig scan;
  scan.n_list = require_field(config, "n_list").get<std::vector<std::size_t>>();
  scan.samples_per_n = config.value("samples_per_n", 200);
  scan.seed = config["seed"].get<std::uint64_t>();
  if (config.contains("decision_rule")) {
    const json& rule = config["decision_rule"];
    scan.slope_exponential = rule.value("slope_exponential", scan.slope_exponential);
    scan.slope_flat = rule.value("slope_flat", scan.slope_flat);
    scan.r2_min = rule.value("r2_min", scan.r2_min);
  }
  const VarianceReport report = variance_scan(family, parse_distribution(config), scan);

  json body;
  body["report"] = json::parse(report.to_json().dump());
  const auto dir = ensure_out_dir(config);
  write_json_report(dir / "variance_scan.json", config, std::move(body));
  write_file(dir / "variance_scan.csv", report.to_csv());
  return 0;
}

int run_shadows_acquire(const json& config) {
  const Circuit prep = parse_state_prep(config, [&] {
    const json& spec = require_field(config, "state_prep");
    return parse_circuit(spec, "state_prep").n;
  }());
  const std::size_t shots = require_field(config, "shots").get<std::size_t>();
  const std::uint64_t seed = config["seed"].get<std::uint64_t>();
  const std::string prep_id = config.value("state_prep_id", std::string("prep"));

  const ShadowDataset ds = acquire(prep, shots, seed, prep_id);
  const auto dir = ensure_out_dir(config);
  write_file(dir / "shadows.txt", ds.to_text());
  json body;
  body["n"] = ds.n;
  body["shots"] = ds.shots.size();
  body["dataset"] = "shadows.txt";
  write_json_report(dir / "shadows_acquire.json", config, std::move(body));
  return 0;
}

int run_shadows_estimate(const json& config) {
  const std::string dataset_path = require_field(config, "dataset").get<std::string>();
  std::ifstream in(dataset_path);
  if (!in) throw ConfigError("dataset", "cannot open " + dataset_path);
  const std::string text{std::istreambuf_iterator<char>(in),
                         std::istreambuf_iterator<char>()};
  const ShadowDataset ds = ShadowDataset::from_text(text);

  const json& words = require_field(config, "words");
  const std::size_t batches = config.value("batches", kDefaultBatches);
  const std::size_t budget = config.value("locality_budget", kDefaultLocalityBudget);

  json estimates = json::array();
  for (const auto& w : words) {
    const PauliString word = PauliString::from_string(w.get<std::string>());
    const Estimate e = estimate_pauli(ds, word, batches, budget);
    estimates.push_back(
        {{"word", word.to_string()}, {"value", e.value}, {"stderr", e.std_error}});
  }
  json body;
  body["estimates"] = std::move(estimates);
  write_json_report(ensure_out_dir(config) / "shadows_estimate.json", config,
                    std::move(body));
  return 0;
}

int run_leakage(const json& config) {
  const Circuit circuit = parse_circuit(require_field(config, "circuit"), "circuit");
  const PauliSum obs = parse_observable(require_field(config, "observable"),
                                        circuit.n, "observable");

  const json& sub = require_field(config, "subspace");
  SubspaceDescriptor descriptor;
  const std::string kind = require_field(sub, "kind").get<std::string>();
  if (kind == "max_weight") {
    descriptor = SubspaceDescriptor::max_weight_cut(
        require_field(sub, "max_weight").get<std::size_t>());
  } else if (kind == "support") {
    descriptor = SubspaceDescriptor::support(
        require_field(sub, "qubits").get<std::vector<std::size_t>>());
  } else if (kind == "majorana_degrees") {
    const auto degrees = require_field(sub, "degrees").get<std::vector<std::size_t>>();
    descriptor = SubspaceDescriptor::majorana_degrees(
        std::set<std::size_t>(degrees.begin(), degrees.end()));
  } else if (kind == "words") {
    std::unordered_set<PauliString, PauliStringHash> words;
    for (const auto& w : require_field(sub, "words")) {
      words.insert(PauliString::from_string(w.get<std::string>()));
    }
    descriptor = SubspaceDescriptor::pauli_words(std::move(words));
  } else {
    throw ConfigError("subspace.kind", "unknown kind: " + kind);
  }

  const ParamDistribution dist = parse_distribution(config);
  const std::size_t samples = config.value("samples", 20);
  const std::uint64_t seed = config["seed"].get<std::uint64_t>();

  std::vector<double> leaks(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    const auto params = sample_params(
        dist, circuit.n_params, derive_seed(seed, "leakage/sample=" + std::to_string(s)));
    leaks[s] = leakage(circuit, params, obs, descriptor);
  }
  std::vector<double> sorted = leaks;
  std::sort(sorted.begin(), sorted.end());

  json body;
  body["leakage_per_sample"] = leaks;
  body["median"] = sorted[sorted.size() / 2];
  body["max"] = sorted.back();
  write_json_report(ensure_out_dir(config) / "leakage.json", config, std::move(body));
  return 0;
}

int run_split_ab(const json& config) {
  Circuit u = parse_circuit(require_field(config, "circuit"), "circuit");
  if (u.n_params > 0) {
    if (!config.contains("params")) {
      throw ConfigError("params", "the fixed circuit U has open parameters");
    }
    u = u.bind(config["params"].get<std::vector<double>>());
  }
  const PauliSum obs = parse_observable(require_field(config, "observable"), u.n,
                                        "observable");
  const auto k_list = require_field(config, "k_list").get<std::vector<std::size_t>>();
  const std::size_t samples = config.value("samples", 200);
  const std::uint64_t seed = config["seed"].get<std::uint64_t>();

  const AbSplitReport report = discrete_vs_continuous(u, obs, k_list, samples, seed);
  json body;
  body["report"] = json::parse(report.to_json().dump());
  write_json_report(ensure_out_dir(config) / "split_ab.json", config, std::move(body));
  return 0;
}

int dispatch(const std::string& command, const CommonOptions& opts) {
  const json config = load_config(opts);
  apply_threads(config);
  if (command == "dla") return run_dla(config);
  if (command == "simulate") return run_simulate(config);
  if (command == "compare") return run_compare(config);
  if (command == "variance-scan") return run_variance_scan(config);
  if (command == "shadows-acquire") return run_shadows_acquire(config);
  if (command == "shadows-estimate") return run_shadows_estimate(config);
  if (command == "leakage") return run_leakage(config);
  if (command == "split-ab") return run_split_ab(config);
  throw ConfigError("command", "unknown command " + command);
}

json error_record(const std::string& type, const std::string& message,
                  const std::string& path = {}) {
  json e;
  e["error"]["type"] = type;
  if (!path.empty()) e["error"]["path"] = path;
  e["error"]["message"] = message;
  return e;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical simulation experiments for subspace-structured "
               "parameterized quantum circuits"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  CommonOptions opts;
  std::string command;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "Experiment config JSON");
    sub->add_option("--seed", [&opts](const CLI::results_t& r) {
      opts.seed_override = std::stoull(r[0]);
      return true;
    }, "Master seed (overrides config)");
    sub->add_option("--threads", [&opts](const CLI::results_t& r) {
      opts.threads_override = std::stoi(r[0]);
      return true;
    }, "Worker thread cap (overrides config and SUBSPACE_SIM_THREADS)");
    sub->add_option("--out", [&opts](const CLI::results_t& r) {
      opts.out_override = r[0];
      return true;
    }, "Output directory (overrides config)");
  };

  for (const char* name : {"dla", "simulate", "variance-scan", "compare", "leakage",
                           "split-ab"}) {
    CLI::App* sub = app.add_subcommand(name, "");
    add_common(sub);
    sub->callback([&command, name] { command = name; });
  }
  CLI::App* shadows = app.add_subcommand("shadows", "Shadow data acquisition");
  shadows->require_subcommand(1);
  for (const char* name : {"acquire", "estimate"}) {
    CLI::App* sub = shadows->add_subcommand(name, "");
    add_common(sub);
    sub->callback([&command, name] { command = std::string("shadows-") + name; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    return dispatch(command, opts);
  } catch (const ConfigError& e) {
    std::cerr << error_record("config", e.what(), e.path).dump(2) << "\n";
    return 2;
  } catch (const InadmissibleError& e) {
    json record = error_record("inadmissible", e.what());
    if (e.offending_gate != InadmissibleError::kNoGate) {
      record["error"]["gate_index"] = e.offending_gate;
    }
    std::cerr << record.dump(2) << "\n";
    return 3;
  } catch (const ArgumentError& e) {
    std::cerr << error_record("argument", e.what()).dump(2) << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << error_record("runtime", e.what()).dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << error_record("internal", e.what()).dump(2) << "\n";
    return 1;
  }
}
