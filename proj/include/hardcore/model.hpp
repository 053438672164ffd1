#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "hardcore/graph.hpp"

namespace hardcore {

/// log of the tree uniqueness threshold (Delta-1)^(Delta-1) / (Delta-2)^Delta.
inline double log_lambda_c(int max_degree) {
  if (max_degree < 3) throw std::domain_error("lambda_c needs Delta >= 3");
  double d = static_cast<double>(max_degree);
  return (d - 1.0) * std::log(d - 1.0) - d * std::log(d - 2.0);
}

inline double lambda_c(int max_degree) {
  return std::exp(log_lambda_c(max_degree));
}

/// Hard-core model parameters. `delta` is the slack from criticality used
/// by experiments that assume lambda <= (1-delta)*lambda_c.
struct ModelParams {
  double lambda = 1.0;
  double delta = 0.2;

  /// Whether lambda <= (1-delta)*lambda_c(max_degree). Recorded by
  /// experiments, never silently assumed.
  bool below_critical(int max_degree) const {
    return lambda <= (1.0 - delta) * lambda_c(max_degree);
  }
};

/// Occupancy assignment over vertices. Validity (no adjacent occupied
/// pair) is a property relative to a graph; see is_independent.
struct IndependentSet {
  std::vector<std::uint8_t> occupied;

  static IndependentSet empty(int n) {
    return IndependentSet{std::vector<std::uint8_t>(n, 0)};
  }

  static IndependentSet from_vertices(int n, const std::vector<int>& verts) {
    IndependentSet s = empty(n);
    for (int v : verts) s.occupied[v] = 1;
    return s;
  }

  int size() const { return static_cast<int>(occupied.size()); }

  int occupied_count() const {
    return static_cast<int>(
        std::accumulate(occupied.begin(), occupied.end(), 0));
  }

  std::vector<int> vertices() const {
    std::vector<int> out;
    for (int v = 0; v < size(); ++v)
      if (occupied[v]) out.push_back(v);
    return out;
  }

  bool operator==(const IndependentSet&) const = default;
};

inline bool is_independent(const Graph& g,
                           const std::vector<std::uint8_t>& occupied) {
  if (static_cast<int>(occupied.size()) != g.vertex_count())
    throw std::invalid_argument("occupancy length does not match graph");
  for (const auto& [u, v] : g.edges())
    if (occupied[u] && occupied[v]) return false;
  return true;
}

inline bool is_independent(const Graph& g, const IndependentSet& s) {
  return is_independent(g, s.occupied);
}

inline double weight(const IndependentSet& s, double lambda) {
  return std::pow(lambda, s.occupied_count());
}

inline double log_weight(const IndependentSet& s, double lambda) {
  return s.occupied_count() * std::log(lambda);
}

/// Greedy maximal independent set scanning vertices in index order.
inline IndependentSet greedy_maximal_independent_set(const Graph& g) {
  IndependentSet s = IndependentSet::empty(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    bool blocked = false;
    for (int u : g.neighbors(v)) blocked = blocked || s.occupied[u];
    if (!blocked) s.occupied[v] = 1;
  }
  return s;
}

}  // namespace hardcore
