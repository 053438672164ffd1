#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardcore/graph.hpp"
#include "hardcore/model.hpp"

namespace hardcore {

using VertexField = std::vector<double>;  // entries in [0,1], one per vertex
using EdgeField = std::vector<double>;    // entries in [0,1], one per oriented edge
using PhiFunction = std::vector<double>;  // per-vertex coupling weights, >= 1

/// CSR indexing of oriented edges. The id of (tail, head) is the position
/// of head within tail's sorted adjacency list, offset by the tail's CSR
/// base, so ids are stable and iteration order is deterministic.
class DirectedEdgeIndex {
 public:
  explicit DirectedEdgeIndex(const Graph& g) : g_(&g) {
    offsets_.resize(g.vertex_count() + 1, 0);
    for (int v = 0; v < g.vertex_count(); ++v)
      offsets_[v + 1] = offsets_[v] + g.degree(v);
  }

  int count() const { return offsets_.back(); }
  int offset(int tail) const { return offsets_[tail]; }

  int id(int tail, int head) const {
    const auto& nbrs = g_->neighbors(tail);
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), head);
    if (it == nbrs.end() || *it != head)
      throw std::invalid_argument("no such oriented edge");
    return offsets_[tail] + static_cast<int>(it - nbrs.begin());
  }

  std::pair<int, int> endpoints(int edge_id) const {
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), edge_id);
    int tail = static_cast<int>(it - offsets_.begin()) - 1;
    int head = g_->neighbors(tail)[edge_id - offsets_[tail]];
    return {tail, head};
  }

  const Graph& graph() const { return *g_; }

 private:
  const Graph* g_;
  std::vector<int> offsets_;
};

/// Unrooted operator: F(w)(z) = prod_{y in N(z)} 1/(1 + lambda w(y)).
inline VertexField apply_F(const Graph& g, double lambda,
                           const VertexField& field) {
  VertexField out(g.vertex_count());
  for (int z = 0; z < g.vertex_count(); ++z) {
    double prod = 1.0;
    for (int y : g.neighbors(z)) prod /= 1.0 + lambda * field[y];
    out[z] = prod;
  }
  return out;
}

/// Parented operator on oriented edges:
/// H(w)(v,p) = prod_{u in N(v) \ {p}} 1/(1 + lambda w(u,v)).
inline EdgeField apply_H(const Graph& g, const DirectedEdgeIndex& index,
                         double lambda, const EdgeField& field) {
  EdgeField out(index.count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    for (int p : g.neighbors(v)) {
      double prod = 1.0;
      for (int u : g.neighbors(v)) {
        if (u == p) continue;
        prod /= 1.0 + lambda * field[index.id(u, v)];
      }
      out[index.id(v, p)] = prod;
    }
  }
  return out;
}

/// Potential Psi(x) = arcsinh(sqrt(lambda x)) / sqrt(lambda).
inline double psi(double lambda, double x) {
  if (lambda <= 0.0) throw std::domain_error("psi needs lambda > 0");
  if (x < 0.0) throw std::domain_error("psi needs x >= 0");
  return std::asinh(std::sqrt(lambda * x)) / std::sqrt(lambda);
}

/// Global max-Psi distance between two equally sized fields.
inline double psi_distance(double lambda, const std::vector<double>& f1,
                           const std::vector<double>& f2) {
  double d = 0.0;
  for (std::size_t i = 0; i < f1.size(); ++i)
    d = std::max(d, std::abs(psi(lambda, f1[i]) - psi(lambda, f2[i])));
  return d;
}

/// Ball-restricted metric: max over B(center, radius) of the Psi gap.
/// radius < 0 means the whole vertex set.
inline double psi_metric(const Graph& g, double lambda, const VertexField& f1,
                         const VertexField& f2, int center, int radius) {
  if (radius < 0) return psi_distance(lambda, f1, f2);
  double d = 0.0;
  for (int z : ball(g, center, radius))
    d = std::max(d, std::abs(psi(lambda, f1[z]) - psi(lambda, f2[z])));
  return d;
}

struct FixedPointOptions {
  double tol = 1e-10;
  int max_iter = 5000;
};

/// Outcome of a synchronous fixed-point iteration. Non-convergence is an
/// ordinary outcome (converged = false, last residual reported); it is the
/// expected behavior once lambda leaves the contraction regime.
template <typename Field>
struct FixedPointReport {
  Field fixed_point;
  int iterations = 0;
  double final_residual = 0.0;  // max-Psi distance of the last sweep
  std::vector<double> contraction_factors;  // successive residual ratios
  bool converged = false;
};

namespace detail {

template <typename Field, typename Step>
FixedPointReport<Field> iterate_to_fixed_point(double lambda, Field field,
                                               const FixedPointOptions& opts,
                                               Step step) {
  if (opts.tol <= 0.0) throw std::invalid_argument("tolerance must be > 0");
  FixedPointReport<Field> report;
  double prev_resid = -1.0;
  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    Field next = step(field);
    double resid = psi_distance(lambda, next, field);
    field = std::move(next);
    report.iterations = iter;
    report.final_residual = resid;
    if (prev_resid > 0.0)
      report.contraction_factors.push_back(resid / prev_resid);
    prev_resid = resid;
    if (resid <= opts.tol) {
      report.converged = true;
      break;
    }
  }
  report.fixed_point = std::move(field);
  return report;
}

}  // namespace detail

/// Iterates F from `init` (all-ones unless given) until successive sweeps
/// are within tol in max-Psi distance.
inline FixedPointReport<VertexField> fixed_point_F(
    const Graph& g, double lambda, const FixedPointOptions& opts = {},
    std::optional<VertexField> init = std::nullopt) {
  VertexField start = init.value_or(VertexField(g.vertex_count(), 1.0));
  if (static_cast<int>(start.size()) != g.vertex_count())
    throw std::invalid_argument("init field size mismatch");
  return detail::iterate_to_fixed_point(
      lambda, std::move(start), opts,
      [&](const VertexField& f) { return apply_F(g, lambda, f); });
}

inline FixedPointReport<EdgeField> fixed_point_H(
    const Graph& g, const DirectedEdgeIndex& index, double lambda,
    const FixedPointOptions& opts = {},
    std::optional<EdgeField> init = std::nullopt) {
  EdgeField start = init.value_or(EdgeField(index.count(), 1.0));
  if (static_cast<int>(start.size()) != index.count())
    throw std::invalid_argument("init field size mismatch");
  return detail::iterate_to_fixed_point(
      lambda, std::move(start), opts,
      [&](const EdgeField& f) { return apply_H(g, index, lambda, f); });
}

/// Fixed point of the symmetric recurrence x = (1 + lambda x)^(-d),
/// by bisection on [0,1]; the map is strictly decreasing in x.
inline double symmetric_fixed_point(double lambda, int d,
                                    double tol = 1e-14) {
  double lo = 0.0, hi = 1.0;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (std::pow(1.0 + lambda * mid, -d) > mid)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

/// Contraction coefficient alpha(lambda, d) = sqrt(d lambda x / (1 + lambda x))
/// at the symmetric fixed point x = x(lambda, d).
inline double alpha(double lambda, int d) {
  if (d < 2) throw std::invalid_argument("alpha needs d >= 2");
  if (lambda <= 0.0) throw std::domain_error("alpha needs lambda > 0");
  double x = symmetric_fixed_point(lambda, d);
  return std::sqrt(d * lambda * x / (1.0 + lambda * x));
}

/// (1 - delta/6) - alpha(lambda, Delta); nonnegative means the certified
/// contraction regime.
inline double uniqueness_margin(double lambda, int max_degree, double delta) {
  if (max_degree < 3) throw std::invalid_argument("margin needs Delta >= 3");
  return (1.0 - delta / 6.0) - alpha(lambda, max_degree);
}

/// Smallest Delta in [3, max_scan] whose margin at lambda = (1-delta)*
/// lambda_c(Delta) is nonnegative. Empirically observed value, reported
/// without any claim of minimality beyond the scan.
inline std::optional<int> first_certified_degree(double delta,
                                                 int max_scan = 10000) {
  for (int d = 3; d <= max_scan; ++d)
    if (uniqueness_margin((1.0 - delta) * lambda_c(d), d, delta) >= 0.0)
      return d;
  return std::nullopt;
}

/// Coupling weights Phi(v) = sqrt((1 + lambda w*(v)) / w*(v)).
inline PhiFunction build_phi(const Graph& g, double lambda,
                             const VertexField& omega_star) {
  PhiFunction phi(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!(omega_star[v] > 0.0))
      throw std::domain_error("build_phi: nonpositive fixed-point entry");
    phi[v] = std::sqrt((1.0 + lambda * omega_star[v]) / omega_star[v]);
  }
  return phi;
}

struct PhiContractionReport {
  std::vector<double> ratios;  // per-vertex weighted-neighborhood ratio
  double max_ratio = 0.0;
  int argmax = -1;
  double threshold = 0.0;  // 1 - delta/6
  bool satisfied = false;
};

/// Checks (1 - delta/6) Phi(v) >= sum_{u in N(v)} lambda w*(u) Phi(u) /
/// (1 + lambda w*(u)) vertex by vertex.
inline PhiContractionReport verify_phi_contraction(const Graph& g,
                                                   double lambda,
                                                   const VertexField& omega_star,
                                                   const PhiFunction& phi,
                                                   double delta) {
  PhiContractionReport report;
  report.threshold = 1.0 - delta / 6.0;
  report.ratios.resize(g.vertex_count(), 0.0);
  for (int v = 0; v < g.vertex_count(); ++v) {
    double sum = 0.0;
    for (int u : g.neighbors(v))
      sum += lambda * omega_star[u] * phi[u] / (1.0 + lambda * omega_star[u]);
    report.ratios[v] = sum / phi[v];
    if (report.ratios[v] > report.max_ratio || report.argmax < 0) {
      report.max_ratio = report.ratios[v];
      report.argmax = v;
    }
  }
  report.satisfied = report.max_ratio <= report.threshold;
  return report;
}

/// Jacobian magnitudes of F at `field`: row v holds
/// lambda F(field)(v) / (1 + lambda field(u)) for u in N(v), in adjacency
/// order. Off-neighborhood entries are identically zero and not stored.
inline std::vector<std::vector<double>> jacobian_rows(const Graph& g,
                                                      double lambda,
                                                      const VertexField& field) {
  VertexField fv = apply_F(g, lambda, field);
  std::vector<std::vector<double>> rows(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    rows[v].reserve(g.degree(v));
    for (int u : g.neighbors(v))
      rows[v].push_back(lambda * fv[v] / (1.0 + lambda * field[u]));
  }
  return rows;
}

enum class BpMode { parented, unrooted };

inline BpMode bp_mode_from_string(const std::string& name) {
  if (name == "parented") return BpMode::parented;
  if (name == "unrooted") return BpMode::unrooted;
  throw std::invalid_argument("unknown BP mode: " + name);
}

/// Marginal estimates after t message sweeps from the flat start R^0 = lambda
/// (equivalently w^0 = 1). Parented mode fills edge_q with
/// q^t(v,p) = R^t_{v->p} / (1 + R^t_{v->p}); unrooted mode fills vertex_q.
struct LoopyBpResult {
  int iterations = 0;
  EdgeField edge_q;     // parented estimates, DirectedEdgeIndex order
  VertexField vertex_q; // unrooted estimates
};

inline LoopyBpResult loopy_bp_marginals(const Graph& g,
                                        const DirectedEdgeIndex& index,
                                        double lambda, int iterations,
                                        BpMode mode) {
  if (iterations < 1) throw std::invalid_argument("need at least 1 iteration");
  LoopyBpResult out;
  out.iterations = iterations;
  if (mode == BpMode::parented) {
    EdgeField w(index.count(), 1.0);
    for (int t = 0; t < iterations; ++t) w = apply_H(g, index, lambda, w);
    out.edge_q.resize(index.count());
    for (int e = 0; e < index.count(); ++e) {
      double ratio = lambda * w[e];
      out.edge_q[e] = ratio / (1.0 + ratio);
    }
  } else {
    VertexField w(g.vertex_count(), 1.0);
    for (int t = 0; t < iterations; ++t) w = apply_F(g, lambda, w);
    out.vertex_q.resize(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) {
      double ratio = lambda * w[v];
      out.vertex_q[v] = ratio / (1.0 + ratio);
    }
  }
  return out;
}

/// Reference field w* for experiments. Uses the F fixed point when the
/// sweep converges; on regular graphs where it oscillates, falls back to
/// the symmetric fixed point, which is an exact fixed point of F there.
struct BpReference {
  VertexField omega;
  bool from_iteration = true;
  FixedPointReport<VertexField> report;
};

inline BpReference bp_reference_field(const Graph& g, double lambda,
                                      const FixedPointOptions& opts = {}) {
  BpReference ref;
  ref.report = fixed_point_F(g, lambda, opts);
  if (ref.report.converged) {
    ref.omega = ref.report.fixed_point;
    return ref;
  }
  if (g.is_regular() && g.max_degree() >= 1) {
    ref.from_iteration = false;
    ref.omega.assign(g.vertex_count(),
                     symmetric_fixed_point(lambda, g.max_degree()));
    return ref;
  }
  throw std::runtime_error(
      "bp_reference_field: iteration did not converge and graph is not "
      "regular");
}

}  // namespace hardcore
