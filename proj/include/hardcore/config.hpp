#pragma once

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "hardcore/graph.hpp"
#include "hardcore/model.hpp"

namespace hardcore {

/// Schema violation; the message carries the offending field path.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GeneratorSpec {
  std::string kind;  // "regular" | "bipartite"
  int n = 0;         // vertices (regular) or vertices per side (bipartite)
  int degree = 0;
  std::uint64_t seed = 1;

  bool operator==(const GeneratorSpec&) const = default;
};

/// Declarative experiment parameters. A graph comes from a file or a
/// generator spec; the fugacity is absolute or a ratio of
/// lambda_c(max degree).
struct ExperimentConfig {
  std::optional<std::string> graph_file;
  std::optional<GeneratorSpec> generator;
  std::optional<double> lambda;
  std::optional<double> lambda_ratio;
  double delta = 0.2;
  double eps = 0.1;
  int replicates = 100;
  long long burn_in = 0;
  long long window = 1000;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string out;

  bool operator==(const ExperimentConfig&) const = default;
};

inline std::uint64_t default_seed_from_env() {
  if (const char* env = std::getenv("HARDCORE_LAB_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 1;
}

namespace detail {

template <typename T>
T require_field(const nlohmann::json& j, const std::string& path,
                const char* key) {
  if (!j.contains(key))
    throw ConfigError("missing required field " + path + "." + key);
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("wrong type at " + path + "." + key);
  }
}

template <typename T>
void read_optional(const nlohmann::json& j, const std::string& path,
                   const char* key, T& into) {
  if (!j.contains(key)) return;
  try {
    into = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("wrong type at " + path + "." + key);
  }
}

template <typename T>
void read_optional(const nlohmann::json& j, const std::string& path,
                   const char* key, std::optional<T>& into) {
  if (!j.contains(key)) return;
  T value{};
  read_optional(j, path, key, value);
  into = value;
}

}  // namespace detail

inline ExperimentConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config root must be an object ($)");
  ExperimentConfig cfg;
  cfg.seed = default_seed_from_env();

  if (!j.contains("graph"))
    throw ConfigError("missing required field $.graph");
  const auto& graph = j.at("graph");
  if (graph.contains("file")) {
    cfg.graph_file = detail::require_field<std::string>(graph, "$.graph", "file");
  } else if (graph.contains("generator")) {
    const auto& gen = graph.at("generator");
    GeneratorSpec spec;
    spec.kind =
        detail::require_field<std::string>(gen, "$.graph.generator", "kind");
    if (spec.kind != "regular" && spec.kind != "bipartite")
      throw ConfigError("unknown generator kind at $.graph.generator.kind");
    spec.n = detail::require_field<int>(gen, "$.graph.generator", "n");
    spec.degree =
        detail::require_field<int>(gen, "$.graph.generator", "degree");
    detail::read_optional(gen, "$.graph.generator", "seed", spec.seed);
    cfg.generator = spec;
  } else {
    throw ConfigError("missing required field $.graph.file or $.graph.generator");
  }

  detail::read_optional(j, "$", "lambda", cfg.lambda);
  detail::read_optional(j, "$", "lambda_ratio", cfg.lambda_ratio);
  if (cfg.lambda && cfg.lambda_ratio)
    throw ConfigError("$.lambda and $.lambda_ratio are mutually exclusive");
  if (!cfg.lambda && !cfg.lambda_ratio)
    throw ConfigError("missing required field $.lambda or $.lambda_ratio");

  detail::read_optional(j, "$", "delta", cfg.delta);
  detail::read_optional(j, "$", "eps", cfg.eps);
  detail::read_optional(j, "$", "replicates", cfg.replicates);
  detail::read_optional(j, "$", "burn_in", cfg.burn_in);
  detail::read_optional(j, "$", "window", cfg.window);
  detail::read_optional(j, "$", "seed", cfg.seed);
  detail::read_optional(j, "$", "jobs", cfg.jobs);
  detail::read_optional(j, "$", "out", cfg.out);

  if (cfg.replicates < 1) throw ConfigError("$.replicates must be >= 1");
  if (cfg.eps <= 0.0) throw ConfigError("$.eps must be > 0");
  if (cfg.burn_in < 0) throw ConfigError("$.burn_in must be >= 0");
  if (cfg.lambda && *cfg.lambda <= 0.0)
    throw ConfigError("$.lambda must be > 0");
  if (cfg.lambda_ratio && *cfg.lambda_ratio <= 0.0)
    throw ConfigError("$.lambda_ratio must be > 0");
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  return parse_config(j);
}

/// Echo that reparses to the same config.
inline nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  if (cfg.graph_file) {
    j["graph"] = {{"file", *cfg.graph_file}};
  } else if (cfg.generator) {
    j["graph"] = {{"generator",
                   {{"kind", cfg.generator->kind},
                    {"n", cfg.generator->n},
                    {"degree", cfg.generator->degree},
                    {"seed", cfg.generator->seed}}}};
  }
  if (cfg.lambda) j["lambda"] = *cfg.lambda;
  if (cfg.lambda_ratio) j["lambda_ratio"] = *cfg.lambda_ratio;
  j["delta"] = cfg.delta;
  j["eps"] = cfg.eps;
  j["replicates"] = cfg.replicates;
  j["burn_in"] = cfg.burn_in;
  j["window"] = cfg.window;
  j["seed"] = cfg.seed;
  j["jobs"] = cfg.jobs;
  if (!cfg.out.empty()) j["out"] = cfg.out;
  return j;
}

inline Graph resolve_graph(const ExperimentConfig& cfg) {
  if (cfg.graph_file) {
    std::ifstream in(*cfg.graph_file);
    if (!in) throw ConfigError("cannot open graph file: " + *cfg.graph_file);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return load_edge_list(buffer.str());
  }
  if (!cfg.generator) throw ConfigError("no graph source configured");
  const GeneratorSpec& gen = *cfg.generator;
  if (gen.kind == "regular")
    return random_regular(gen.n, gen.degree, gen.seed);
  return random_regular_bipartite(gen.n, gen.degree, gen.seed);
}

/// Absolute fugacity; ratios resolve against lambda_c of the graph's
/// maximum degree.
inline double resolve_lambda(const ExperimentConfig& cfg, const Graph& g) {
  if (cfg.lambda) return *cfg.lambda;
  if (!cfg.lambda_ratio) throw ConfigError("no fugacity configured");
  return *cfg.lambda_ratio * lambda_c(g.max_degree());
}

}  // namespace hardcore
