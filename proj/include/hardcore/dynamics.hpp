#pragma once

#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardcore/bp.hpp"
#include "hardcore/graph.hpp"
#include "hardcore/model.hpp"
#include "hardcore/rng.hpp"

namespace hardcore {

/// Single-site dynamics state. Each update consumes exactly one uniform
/// vertex draw and one uniform [0,1) draw, also when the chosen vertex is
/// blocked, so that two states driven by the same draws stay coupled.
///
/// Over a plain graph the state is always an independent set. Over an
/// oriented view the blocking test uses N*, and the reachable states form
/// a superset of the independent sets.
class ChainState {
 public:
  ChainState(const Graph& g, double lambda, std::uint64_t seed)
      : ChainState(g, lambda, seed, IndependentSet::empty(g.vertex_count())) {}

  ChainState(const Graph& g, double lambda, std::uint64_t seed,
             const IndependentSet& start)
      : graph_(&g), lambda_(lambda), rng_(seed) {
    if (!is_independent(g, start))
      throw std::invalid_argument("start state is not independent");
    init(start);
  }

  ChainState(const OrientedView& view, double lambda, std::uint64_t seed,
             const IndependentSet& start)
      : graph_(view.base), view_(&view), lambda_(lambda), rng_(seed) {
    if (start.size() != graph_->vertex_count())
      throw std::invalid_argument("start length does not match graph");
    init(start);
  }

  /// One update with externally supplied randomness; used by couplings.
  void apply_update(int v, double unit) {
    if (blocked_count_[v] == 0) {
      bool occupy = unit < lambda_ / (1.0 + lambda_);
      if (occupy != static_cast<bool>(occ_[v])) toggle(v);
    }
    ++steps_;
  }

  void step() {
    int v = rng_.next_below(graph_->vertex_count());
    double u = rng_.next_unit();
    apply_update(v, u);
  }

  void run(long long steps) {
    for (long long i = 0; i < steps; ++i) step();
  }

  /// Event-driven continuous time: global rate-1 exponential clocks, one
  /// uniform vertex per event, same update rule. Residual waiting time
  /// past the horizon is discarded (memoryless).
  void run_continuous(double duration) {
    if (duration < 0.0) throw std::invalid_argument("negative duration");
    double end = clock_ + duration;
    for (;;) {
      double wait = rng_.next_exponential();
      if (clock_ + wait > end) break;
      clock_ += wait;
      int v = rng_.next_below(graph_->vertex_count());
      double u = rng_.next_unit();
      apply_update(v, u);
    }
    clock_ = end;
  }

  const Graph& graph() const { return *graph_; }
  const OrientedView* view() const { return view_; }
  double lambda() const { return lambda_; }
  const std::vector<std::uint8_t>& occupied() const { return occ_; }
  bool occupied_at(int v) const { return occ_[v]; }
  int occupied_count() const { return occ_count_; }
  long long step_count() const { return steps_; }
  double clock() const { return clock_; }

  IndependentSet snapshot() const { return IndependentSet{occ_}; }

  /// Recomputes the incremental blocked counters from scratch; false means
  /// the incremental state drifted (always a bug).
  bool counters_consistent() const {
    for (int v = 0; v < graph_->vertex_count(); ++v) {
      int count = 0;
      for (int u : blockers(v)) count += occ_[u];
      if (count != blocked_count_[v]) return false;
    }
    return true;
  }

 private:
  void init(const IndependentSet& start) {
    occ_ = start.occupied;
    occ_count_ = start.occupied_count();
    blocked_count_.assign(graph_->vertex_count(), 0);
    for (int v = 0; v < graph_->vertex_count(); ++v)
      for (int u : blockers(v)) blocked_count_[v] += occ_[u];
  }

  const std::vector<int>& blockers(int v) const {
    return view_ ? view_->in_neighbors[v] : graph_->neighbors(v);
  }

  const std::vector<int>& affected(int u) const {
    return view_ ? view_->out_targets[u] : graph_->neighbors(u);
  }

  void toggle(int v) {
    int delta = occ_[v] ? -1 : 1;
    occ_[v] = occ_[v] ? 0 : 1;
    occ_count_ += delta;
    for (int x : affected(v)) blocked_count_[x] += delta;
  }

  const Graph* graph_;
  const OrientedView* view_ = nullptr;
  double lambda_;
  std::vector<std::uint8_t> occ_;
  std::vector<int> blocked_count_;
  int occ_count_ = 0;
  long long steps_ = 0;
  double clock_ = 0.0;
  Rng rng_;
};

/// Two chains driven by one randomness stream (the same vertex and the
/// same uniform each step), with the disagreement set maintained
/// incrementally. The chains may differ in their oriented views but must
/// share the vertex set and fugacity.
class CoupledPair {
 public:
  CoupledPair(const Graph& g, double lambda, std::uint64_t seed,
              const IndependentSet& x0, const IndependentSet& y0)
      : CoupledPair(ChainState(g, lambda, 0, x0), ChainState(g, lambda, 0, y0),
                    seed) {}

  CoupledPair(ChainState x, ChainState y, std::uint64_t seed)
      : x_(std::move(x)), y_(std::move(y)), rng_(seed) {
    if (x_.graph().vertex_count() != y_.graph().vertex_count() ||
        x_.lambda() != y_.lambda())
      throw std::invalid_argument("coupled chains must share graph and lambda");
    for (int v = 0; v < x_.graph().vertex_count(); ++v)
      if (x_.occupied()[v] != y_.occupied()[v]) {
        diff_.insert(v);
        cumulative_.insert(v);
      }
  }

  void step() {
    int v = rng_.next_below(x_.graph().vertex_count());
    double u = rng_.next_unit();
    x_.apply_update(v, u);
    y_.apply_update(v, u);
    if (x_.occupied()[v] != y_.occupied()[v]) {
      diff_.insert(v);
      cumulative_.insert(v);
    } else {
      diff_.erase(v);
    }
  }

  void run(long long steps) {
    for (long long i = 0; i < steps; ++i) step();
  }

  const ChainState& first() const { return x_; }
  const ChainState& second() const { return y_; }
  const std::set<int>& disagreements() const { return diff_; }
  const std::set<int>& cumulative_disagreements() const { return cumulative_; }
  bool coalesced() const { return diff_.empty(); }

  long long hamming() const { return static_cast<long long>(diff_.size()); }

  double weighted_distance(const PhiFunction& phi) const {
    double d = 0.0;
    for (int v : diff_) d += phi[v];
    return d;
  }

  /// From-scratch recomputation of the symmetric difference.
  std::set<int> recompute_disagreements() const {
    std::set<int> out;
    for (int v = 0; v < x_.graph().vertex_count(); ++v)
      if (x_.occupied()[v] != y_.occupied()[v]) out.insert(v);
    return out;
  }

 private:
  ChainState x_, y_;
  std::set<int> diff_, cumulative_;
  Rng rng_;
};

// ---------------------------------------------------------------------------
// Local configuration statistics.
// ---------------------------------------------------------------------------

/// U_{v,p}(sigma): 1 when no neighbor of v other than p is occupied.
/// p = -1 uses the full neighborhood.
inline int unblocked_indicator(const Graph& g,
                               const std::vector<std::uint8_t>& occ, int v,
                               int p = -1) {
  if (p >= 0 && !g.has_edge(v, p))
    throw std::invalid_argument("excluded vertex must neighbor v");
  for (int z : g.neighbors(v))
    if (z != p && occ[z]) return 0;
  return 1;
}

/// S_sigma(v): number of neighbors of v left unblocked by their own other
/// neighbors.
inline int s_stat(const Graph& g, const std::vector<std::uint8_t>& occ,
                  int v) {
  int s = 0;
  for (int z : g.neighbors(v)) s += unblocked_indicator(g, occ, z, v);
  return s;
}

/// W_sigma(v): the same count weighted by Phi.
inline double w_stat(const Graph& g, const std::vector<std::uint8_t>& occ,
                     int v, const PhiFunction& phi) {
  double w = 0.0;
  for (int z : g.neighbors(v))
    w += unblocked_indicator(g, occ, z, v) * phi[z];
  return w;
}

/// R(sigma, v) = prod_{z in N(v)} (1 - lambda/(1+lambda) U_{z,v}(sigma)).
inline double r_stat(const Graph& g, const std::vector<std::uint8_t>& occ,
                     int v, double lambda) {
  double occupy = lambda / (1.0 + lambda);
  double prod = 1.0;
  for (int z : g.neighbors(v))
    prod *= 1.0 - occupy * unblocked_indicator(g, occ, z, v);
  return prod;
}

/// How far the configuration sits from solving the loopy recurrence at v:
/// |R(sigma,v) - prod_{z in N(v)} (1 - lambda/(1+lambda) R(sigma,z))|.
inline double bp_residual(const Graph& g,
                          const std::vector<std::uint8_t>& occ, int v,
                          double lambda) {
  double occupy = lambda / (1.0 + lambda);
  double prod = 1.0;
  for (int z : g.neighbors(v)) prod *= 1.0 - occupy * r_stat(g, occ, z, lambda);
  return std::abs(r_stat(g, occ, v, lambda) - prod);
}

/// rho-heavy at v: |B_2(v) cap sigma| >= rho*Delta or
/// |B_1(v) cap sigma| >= rho*Delta/log(Delta). log is natural.
inline bool is_heavy(const Graph& g, const std::vector<std::uint8_t>& occ,
                     int v, double rho) {
  if (rho <= 0.0) throw std::domain_error("is_heavy needs rho > 0");
  int max_deg = g.max_degree();
  if (max_deg < 3) throw std::domain_error("is_heavy needs Delta >= 3");
  double d = static_cast<double>(max_deg);
  int b1 = occ[v];
  for (int z : g.neighbors(v)) b1 += occ[z];
  if (b1 >= rho * d / std::log(d)) return true;
  int b2 = 0;
  for (int z : ball(g, v, 2)) b2 += occ[z];
  return b2 >= rho * d;
}

/// No vertex of B_r(v) is rho-heavy.
inline bool above_suspicion(const Graph& g,
                            const std::vector<std::uint8_t>& occ, int v,
                            double rho, int r) {
  if (r < 0) throw std::invalid_argument("radius must be >= 0");
  for (int w : ball(g, v, r))
    if (is_heavy(g, occ, w, rho)) return false;
  return true;
}

/// One trajectory record: step index then the occupied vertices.
inline std::string snapshot_line(long long step,
                                 const std::vector<std::uint8_t>& occ) {
  std::string line = std::to_string(step);
  for (int v = 0; v < static_cast<int>(occ.size()); ++v)
    if (occ[v]) {
      line += ' ';
      line += std::to_string(v);
    }
  line += '\n';
  return line;
}

}  // namespace hardcore
