#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hardcore/model.hpp"

namespace hardcore {

struct OracleLimits {
  std::size_t max_subproblems = 8'000'000;  // deletion-recursion nodes
  std::size_t max_states = 1u << 16;        // enumerated independent sets
};

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact hard-core computations on one (graph, lambda) pair, via the
/// deletion recursion Z(G) = Z(G-v) + lambda * Z(G-v-N(v)) memoized on the
/// remaining-vertex bitmask, with connected components solved separately.
/// Restricted to vertex_count <= 62.
class PartitionOracle {
 public:
  PartitionOracle(const Graph& g, double lambda, OracleLimits limits = {})
      : g_(&g), lambda_(lambda), limits_(limits) {
    if (g.vertex_count() > 62)
      throw std::invalid_argument("oracle supports at most 62 vertices");
    nbr_mask_.resize(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v)
      for (int u : g.neighbors(v)) nbr_mask_[v] |= bit(u);
    full_mask_ = g.vertex_count() == 0 ? 0 : (bit(g.vertex_count() - 1) << 1) - 1;
  }

  double partition() { return partition_of(full_mask_); }

  /// Z of the subgraph induced by the mask's vertices.
  double partition_of(std::uint64_t mask) { return component_split(mask); }

  /// Independent log-space route for the same quantity.
  double log_partition() { return log_partition_of(full_mask_); }

  double log_partition_of(std::uint64_t mask) {
    return log_component_split(mask);
  }

  /// mu(v occupied) = lambda * Z(G - v - N(v)) / Z(G).
  double marginal(int v) {
    double z = partition();
    double z_free = partition_of(full_mask_ & ~bit(v) & ~nbr_mask_[v]);
    return lambda_ * z_free / z;
  }

  /// mu(v occupied | p unoccupied) for a neighbor p, i.e. the marginal of
  /// v in G - p.
  double conditional_marginal(int v, int p) {
    if (!g_->has_edge(v, p))
      throw std::invalid_argument("conditioning vertex must neighbor v");
    std::uint64_t mask = full_mask_ & ~bit(p);
    double z = partition_of(mask);
    double z_free = partition_of(mask & ~bit(v) & ~nbr_mask_[v]);
    return lambda_ * z_free / z;
  }

  const Graph& graph() const { return *g_; }
  double lambda() const { return lambda_; }

 private:
  static std::uint64_t bit(int v) { return std::uint64_t{1} << v; }

  void charge() {
    if (++spent_ > limits_.max_subproblems)
      throw BudgetExceeded("oracle subproblem budget exceeded");
  }

  // Splits mask into connected components (within the induced subgraph)
  // and multiplies their partition functions.
  double component_split(std::uint64_t mask) {
    double z = 1.0;
    while (mask != 0) {
      std::uint64_t comp = component_of(mask);
      z *= memoized(comp);
      mask &= ~comp;
    }
    return z;
  }

  double log_component_split(std::uint64_t mask) {
    double lz = 0.0;
    while (mask != 0) {
      std::uint64_t comp = component_of(mask);
      lz += log_memoized(comp);
      mask &= ~comp;
    }
    return lz;
  }

  std::uint64_t component_of(std::uint64_t mask) const {
    int start = std::countr_zero(mask);
    std::uint64_t comp = bit(start), frontier = comp;
    while (frontier != 0) {
      int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      std::uint64_t fresh = nbr_mask_[v] & mask & ~comp;
      comp |= fresh;
      frontier |= fresh;
    }
    return comp;
  }

  int pick_pivot(std::uint64_t mask) const {
    // Highest remaining degree keeps the branching shallow.
    int best = -1, best_deg = -1;
    std::uint64_t m = mask;
    while (m != 0) {
      int v = std::countr_zero(m);
      m &= m - 1;
      int deg = std::popcount(nbr_mask_[v] & mask);
      if (deg > best_deg) {
        best_deg = deg;
        best = v;
      }
    }
    return best;
  }

  double memoized(std::uint64_t mask) {
    if (mask == 0) return 1.0;
    if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
    charge();
    int v = pick_pivot(mask);
    double z = component_split(mask & ~bit(v)) +
               lambda_ * component_split(mask & ~bit(v) & ~nbr_mask_[v]);
    memo_.emplace(mask, z);
    return z;
  }

  double log_memoized(std::uint64_t mask) {
    if (mask == 0) return 0.0;
    if (auto it = log_memo_.find(mask); it != log_memo_.end())
      return it->second;
    charge();
    int v = pick_pivot(mask);
    double a = log_component_split(mask & ~bit(v));
    double b = std::log(lambda_) +
               log_component_split(mask & ~bit(v) & ~nbr_mask_[v]);
    double hi = std::max(a, b), lo = std::min(a, b);
    double lz = hi + std::log1p(std::exp(lo - hi));
    log_memo_.emplace(mask, lz);
    return lz;
  }

  const Graph* g_;
  double lambda_;
  OracleLimits limits_;
  std::vector<std::uint64_t> nbr_mask_;
  std::uint64_t full_mask_ = 0;
  std::size_t spent_ = 0;
  std::unordered_map<std::uint64_t, double> memo_, log_memo_;
};

inline double exact_partition(const Graph& g, double lambda,
                              OracleLimits limits = {}) {
  return PartitionOracle(g, lambda, limits).partition();
}

inline double exact_marginal(const Graph& g, double lambda, int v,
                             OracleLimits limits = {}) {
  return PartitionOracle(g, lambda, limits).marginal(v);
}

inline double exact_conditional_marginal(const Graph& g, double lambda, int v,
                                         int p, OracleLimits limits = {}) {
  return PartitionOracle(g, lambda, limits).conditional_marginal(v, p);
}

/// Full Gibbs distribution as (independent set bitmask, probability) rows,
/// in increasing bitmask order.
struct GibbsTable {
  std::vector<std::uint64_t> states;
  std::vector<double> prob;

  int index_of(std::uint64_t state) const {
    auto it = std::lower_bound(states.begin(), states.end(), state);
    if (it == states.end() || *it != state)
      throw std::invalid_argument("state is not an independent set");
    return static_cast<int>(it - states.begin());
  }

  std::size_t size() const { return states.size(); }
};

inline GibbsTable exact_distribution(const Graph& g, double lambda,
                                     OracleLimits limits = {}) {
  const int n = g.vertex_count();
  if (n > 62) throw std::invalid_argument("oracle supports at most 62 vertices");
  std::vector<std::uint64_t> nbr(n, 0);
  for (int v = 0; v < n; ++v)
    for (int u : g.neighbors(v)) nbr[v] |= std::uint64_t{1} << u;

  GibbsTable table;
  std::vector<double> weights;
  double total = 0.0;
  std::function<void(int, std::uint64_t, double)> extend =
      [&](int v, std::uint64_t state, double w) {
        if (v == n) {
          if (table.states.size() >= limits.max_states)
            throw BudgetExceeded("state enumeration budget exceeded");
          table.states.push_back(state);
          weights.push_back(w);
          total += w;
          return;
        }
        extend(v + 1, state, w);
        if ((nbr[v] & state) == 0)
          extend(v + 1, state | (std::uint64_t{1} << v), w * lambda);
      };
  extend(0, 0, 1.0);
  std::vector<std::size_t> order(table.states.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return table.states[a] < table.states[b];
  });
  GibbsTable sorted;
  sorted.states.reserve(order.size());
  sorted.prob.reserve(order.size());
  for (std::size_t i : order) {
    sorted.states.push_back(table.states[i]);
    sorted.prob.push_back(weights[i] / total);
  }
  return sorted;
}

/// Row-stochastic transition kernel of the discrete-time single-site
/// dynamics over the enumerated independent sets.
struct GlauberKernel {
  GibbsTable table;                                       // states + mu
  std::vector<std::vector<std::pair<int, double>>> rows;  // sparse rows

  std::size_t size() const { return table.size(); }

  /// One step of a distribution (row vector times kernel).
  std::vector<double> evolve(const std::vector<double>& dist) const {
    std::vector<double> out(dist.size(), 0.0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (dist[i] == 0.0) continue;
      for (const auto& [j, p] : rows[i]) out[j] += dist[i] * p;
    }
    return out;
  }
};

inline GlauberKernel exact_glauber_kernel(const Graph& g, double lambda,
                                          OracleLimits limits = {}) {
  GlauberKernel kernel;
  kernel.table = exact_distribution(g, lambda, limits);
  const int n = g.vertex_count();
  std::vector<std::uint64_t> nbr(n, 0);
  for (int v = 0; v < n; ++v)
    for (int u : g.neighbors(v)) nbr[v] |= std::uint64_t{1} << u;

  const double pick = n > 0 ? 1.0 / n : 1.0;
  const double occupy = lambda / (1.0 + lambda);
  kernel.rows.resize(kernel.size());
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    std::uint64_t s = kernel.table.states[i];
    std::unordered_map<int, double> row;
    for (int v = 0; v < n; ++v) {
      bool unblocked = (nbr[v] & s) == 0;
      if (!unblocked) {
        row[static_cast<int>(i)] += pick;
        continue;
      }
      std::uint64_t with = s | (std::uint64_t{1} << v);
      std::uint64_t without = s & ~(std::uint64_t{1} << v);
      row[kernel.table.index_of(with)] += pick * occupy;
      row[kernel.table.index_of(without)] += pick * (1.0 - occupy);
    }
    auto& out = kernel.rows[i];
    out.assign(row.begin(), row.end());
    std::sort(out.begin(), out.end());
  }
  return kernel;
}

/// E_mu[statistic(X)] by full enumeration.
inline double exact_stat_expectation(
    const Graph& g, double lambda,
    const std::function<double(const IndependentSet&)>& statistic,
    OracleLimits limits = {}) {
  GibbsTable table = exact_distribution(g, lambda, limits);
  const int n = g.vertex_count();
  double acc = 0.0;
  IndependentSet s = IndependentSet::empty(n);
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (int v = 0; v < n; ++v)
      s.occupied[v] = (table.states[i] >> v) & 1 ? 1 : 0;
    acc += table.prob[i] * statistic(s);
  }
  return acc;
}

}  // namespace hardcore
