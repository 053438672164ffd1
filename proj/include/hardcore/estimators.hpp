#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "hardcore/bp.hpp"
#include "hardcore/dynamics.hpp"
#include "hardcore/graph.hpp"
#include "hardcore/oracle.hpp"
#include "hardcore/report.hpp"

namespace hardcore {

/// Runs fn(0..count-1) on up to `jobs` threads. Each index writes only its
/// own slot downstream, so results are independent of the schedule.
inline void parallel_for(int jobs, int count,
                         const std::function<void(int)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> pool;
  int spawn = std::min(jobs, count);
  pool.reserve(spawn);
  for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

inline double normal_quantile(double p) {
  if (p <= 0.0 || p >= 1.0) throw std::domain_error("quantile needs 0<p<1");
  double lo = -10.0, hi = 10.0;
  while (hi - lo > 1e-12) {
    double mid = 0.5 * (lo + hi);
    (0.5 * (1.0 + std::erf(mid / std::sqrt(2.0))) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline MetricEstimate mean_with_ci(const std::vector<double>& values,
                                   std::uint64_t seed,
                                   double confidence = 0.95) {
  MetricEstimate m;
  m.replicates = static_cast<int>(values.size());
  m.seed = seed;
  if (values.empty()) return m;
  double sum = 0.0;
  for (double v : values) sum += v;
  m.estimate = sum / values.size();
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - m.estimate) * (v - m.estimate);
    double sd = std::sqrt(ss / (values.size() - 1));
    m.half_width = normal_quantile(0.5 + confidence / 2.0) * sd /
                   std::sqrt(static_cast<double>(values.size()));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Exact total-variation and mixing time via the oracle kernel.
// ---------------------------------------------------------------------------

inline double tv_from_stationary(const GlauberKernel& kernel,
                                 const std::vector<double>& dist) {
  double tv = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i)
    tv += std::abs(dist[i] - kernel.table.prob[i]);
  return 0.5 * tv;
}

inline double tv_exact(const GlauberKernel& kernel, long long t,
                       std::uint64_t start_state) {
  std::vector<double> dist(kernel.size(), 0.0);
  dist[kernel.table.index_of(start_state)] = 1.0;
  for (long long i = 0; i < t; ++i) dist = kernel.evolve(dist);
  return tv_from_stationary(kernel, dist);
}

inline double tv_exact(const Graph& g, double lambda, long long t,
                       const IndependentSet& start, OracleLimits limits = {}) {
  std::uint64_t mask = 0;
  for (int v = 0; v < start.size(); ++v)
    if (start.occupied[v]) mask |= std::uint64_t{1} << v;
  return tv_exact(exact_glauber_kernel(g, lambda, limits), t, mask);
}

/// min { t : TV(X_t, mu) <= eps from every start }, exactly. Starts default
/// to the whole state space; pass a subset for larger Omega.
inline long long mixing_time_exact(
    const Graph& g, double lambda, double eps, OracleLimits limits = {},
    long long max_t = 1'000'000,
    const std::optional<std::vector<std::uint64_t>>& starts = std::nullopt) {
  GlauberKernel kernel = exact_glauber_kernel(g, lambda, limits);
  const std::vector<std::uint64_t>& from =
      starts ? *starts : kernel.table.states;
  long long worst = 0;
  for (std::uint64_t s : from) {
    std::vector<double> dist(kernel.size(), 0.0);
    dist[kernel.table.index_of(s)] = 1.0;
    long long t = 0;
    while (tv_from_stationary(kernel, dist) > eps) {
      dist = kernel.evolve(dist);
      if (++t > max_t) throw BudgetExceeded("mixing time exceeds max_t");
    }
    worst = std::max(worst, t);
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Local uniformity.
// ---------------------------------------------------------------------------

struct UniformityOptions {
  double eps = 0.3;
  long long burn_in = 0;
  long long window = 1000;
  int replicates = 100;
  std::uint64_t seed = 1;
  int jobs = 1;
  bool worst_start = true;  // greedy maximal start; empty otherwise
  OracleLimits oracle_limits = {};
};

/// (a) stationary check of |S_X(v) - sum omega*| <= eps*Delta under mu,
/// exact when enumeration fits the budget, else sampled; (b) fraction of
/// chains keeping W_{X_t}(v) below sum omega*(z)Phi(z) + eps*Delta through
/// the whole window after burn-in.
inline Report uniformity_experiment(const Graph& g, double lambda, int v,
                                    const VertexField& omega_star,
                                    const PhiFunction& phi,
                                    const UniformityOptions& opts) {
  Report report;
  report.experiment = "uniformity";
  double d = static_cast<double>(g.max_degree());
  double s_reference = 0.0, w_reference = 0.0;
  for (int z : g.neighbors(v)) {
    s_reference += omega_star[z];
    w_reference += omega_star[z] * phi[z];
  }
  double s_slack = opts.eps * d;
  double w_bound = w_reference + opts.eps * d;

  report.inputs = {{"vertex", v},
                   {"lambda", lambda},
                   {"eps", opts.eps},
                   {"burn_in", opts.burn_in},
                   {"window", opts.window},
                   {"replicates", opts.replicates},
                   {"seed", opts.seed},
                   {"worst_start", opts.worst_start}};
  report.metrics["s_reference"] = {s_reference, 0.0, 0, opts.seed};
  report.metrics["w_bound"] = {w_bound, 0.0, 0, opts.seed};

  auto stationary_indicator = [&](const IndependentSet& s) {
    return std::abs(s_stat(g, s.occupied, v) - s_reference) <= s_slack ? 1.0
                                                                       : 0.0;
  };
  bool exact = true;
  double stationary_fraction = 0.0;
  try {
    stationary_fraction =
        exact_stat_expectation(g, lambda, stationary_indicator,
                               opts.oracle_limits);
  } catch (const BudgetExceeded&) {
    exact = false;
  } catch (const std::invalid_argument&) {
    exact = false;
  }
  if (exact) {
    report.metrics["stationary_fraction"] = {stationary_fraction, 0.0, 0,
                                             opts.seed};
  } else {
    std::vector<double> hits(opts.replicates);
    parallel_for(opts.jobs, opts.replicates, [&](int i) {
      ChainState chain(g, lambda, derive_seed(opts.seed, 1'000'000 + i));
      chain.run(opts.burn_in + opts.window);
      hits[i] = stationary_indicator(chain.snapshot());
    });
    report.metrics["stationary_fraction"] =
        mean_with_ci(hits, opts.seed);
  }

  IndependentSet start = opts.worst_start
                             ? greedy_maximal_independent_set(g)
                             : IndependentSet::empty(g.vertex_count());
  std::vector<double> held(opts.replicates), pointwise(opts.replicates);
  parallel_for(opts.jobs, opts.replicates, [&](int i) {
    ChainState chain(g, lambda, derive_seed(opts.seed, i), start);
    chain.run(opts.burn_in);
    long long good = 0;
    for (long long t = 0; t < opts.window; ++t) {
      chain.step();
      good += w_stat(g, chain.occupied(), v, phi) < w_bound ? 1 : 0;
    }
    held[i] = good == opts.window ? 1.0 : 0.0;
    pointwise[i] = static_cast<double>(good) / opts.window;
  });
  report.metrics["dynamic_fraction"] = mean_with_ci(held, opts.seed);
  report.metrics["pointwise_fraction"] = mean_with_ci(pointwise, opts.seed);
  report.per_replicate["dynamic_held"] = held;
  report.per_replicate["pointwise"] = pointwise;
  return report;
}

// ---------------------------------------------------------------------------
// Loopy BP accuracy against the oracle.
// ---------------------------------------------------------------------------

/// Worst multiplicative error of the BP estimates after t sweeps:
/// parented q^t(v,p) against mu(v occupied | p unoccupied) over oriented
/// edges, unrooted q~^t(v) against mu(v occupied) over vertices.
inline Report bp_accuracy(const Graph& g, double lambda, int t,
                          OracleLimits limits = {}) {
  Report report;
  report.experiment = "bp_accuracy";
  report.inputs = {{"lambda", lambda}, {"iterations", t}};
  DirectedEdgeIndex index(g);
  PartitionOracle oracle(g, lambda, limits);

  auto parented = loopy_bp_marginals(g, index, lambda, t, BpMode::parented);
  double worst_edge = 0.0;
  for (int v = 0; v < g.vertex_count(); ++v)
    for (int p : g.neighbors(v)) {
      double q = parented.edge_q[index.id(v, p)];
      double mu = oracle.conditional_marginal(v, p);
      worst_edge = std::max(worst_edge, std::abs(q / mu - 1.0));
    }

  auto unrooted = loopy_bp_marginals(g, index, lambda, t, BpMode::unrooted);
  double worst_vertex = 0.0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    double mu = oracle.marginal(v);
    worst_vertex =
        std::max(worst_vertex, std::abs(unrooted.vertex_q[v] / mu - 1.0));
  }

  report.metrics["parented_max_ratio_error"] = {worst_edge, 0.0, 0, 0};
  report.metrics["unrooted_max_ratio_error"] = {worst_vertex, 0.0, 0, 0};
  return report;
}

// ---------------------------------------------------------------------------
// Path-coupling contraction probe.
// ---------------------------------------------------------------------------

enum class StartPolicy { first_vertex, random_vertex, max_degree_vertex };

inline StartPolicy start_policy_from_string(const std::string& name) {
  if (name == "first") return StartPolicy::first_vertex;
  if (name == "random") return StartPolicy::random_vertex;
  if (name == "max-degree") return StartPolicy::max_degree_vertex;
  throw std::invalid_argument("unknown start policy: " + name);
}

struct CouplingOptions {
  long long steps = 0;
  int replicates = 100;
  StartPolicy start_policy = StartPolicy::random_vertex;
  std::uint64_t seed = 1;
  int jobs = 1;
};

/// Empirical E[H(X_T, Y_T)] and E[D_Phi(X_T, Y_T)] for an adjacent start
/// pair (empty set vs a single occupied vertex).
inline Report coupling_contraction(const Graph& g, double lambda,
                                   const PhiFunction& phi,
                                   const CouplingOptions& opts) {
  Report report;
  report.experiment = "coupling_contraction";
  report.inputs = {{"lambda", lambda},
                   {"steps", opts.steps},
                   {"replicates", opts.replicates},
                   {"seed", opts.seed}};
  const int n = g.vertex_count();
  int fixed_vertex = 0;
  if (opts.start_policy == StartPolicy::max_degree_vertex) {
    for (int v = 0; v < n; ++v)
      if (g.degree(v) > g.degree(fixed_vertex)) fixed_vertex = v;
  }

  std::vector<double> hamming(opts.replicates), weighted(opts.replicates),
      coalesced(opts.replicates);
  parallel_for(opts.jobs, opts.replicates, [&](int i) {
    std::uint64_t stream = derive_seed(opts.seed, i);
    int v = fixed_vertex;
    if (opts.start_policy == StartPolicy::random_vertex) {
      Rng pick(derive_seed(opts.seed, 500'000 + i));
      v = pick.next_below(n);
    }
    CoupledPair pair(g, lambda, stream, IndependentSet::empty(n),
                     IndependentSet::from_vertices(n, {v}));
    pair.run(opts.steps);
    hamming[i] = static_cast<double>(pair.hamming());
    weighted[i] = pair.weighted_distance(phi);
    coalesced[i] = pair.coalesced() ? 1.0 : 0.0;
  });

  report.metrics["mean_hamming"] = mean_with_ci(hamming, opts.seed);
  report.metrics["mean_weighted"] = mean_with_ci(weighted, opts.seed);
  report.metrics["coalesced_fraction"] = mean_with_ci(coalesced, opts.seed);
  report.per_replicate["hamming"] = hamming;
  report.per_replicate["weighted"] = weighted;
  return report;
}

// ---------------------------------------------------------------------------
// Partition function estimator.
// ---------------------------------------------------------------------------

struct DegenerateFactor : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZOptions {
  double eps = 0.05;
  double confidence = 0.95;
  std::uint64_t seed = 1;
  double samples_per_vertex_constant = 64.0;  // C in m = ceil(C n / eps^2)
  double burn_in_constant = 20.0;             // burn-in 20 n_i ln n_i
  double factor_floor = 1e-6;
};

struct ZEstimate {
  double z_hat = 1.0;
  double log_z_hat = 0.0;
  double log_half_width = 0.0;  // on log Z, at the requested confidence
  std::vector<double> factors;  // p-hat_i, in elimination order
  long long total_steps = 0;

  double lower() const { return std::exp(log_z_hat - log_half_width); }
  double upper() const { return std::exp(log_z_hat + log_half_width); }
};

/// Telescoping self-reducibility: with vertex order v_1..v_n and
/// G_i = G - {v_1..v_{i-1}}, Z = prod_i 1 / mu_{G_i}(v_i unoccupied).
/// Each factor is estimated from thinned Glauber samples; the interval
/// propagates per-factor binomial variances on log Z and assumes the
/// per-factor estimates are unbiased with the stated variance (reported,
/// not proven).
inline ZEstimate estimate_Z(const Graph& g, double lambda,
                            const ZOptions& opts = {}) {
  if (lambda <= 0.0) throw std::domain_error("estimate_Z needs lambda > 0");
  if (opts.eps <= 0.0) throw std::invalid_argument("eps must be > 0");
  const int n = g.vertex_count();
  ZEstimate out;
  const long long samples = static_cast<long long>(
      std::ceil(opts.samples_per_vertex_constant * n / (opts.eps * opts.eps)));
  double log_var = 0.0;

  std::vector<int> keep(n);
  for (int i = 0; i < n; ++i) keep[i] = i;
  for (int i = 0; i < n; ++i) {
    // G_i: vertices i..n-1; the eliminated vertex has local index 0.
    std::vector<int> tail(keep.begin() + i, keep.end());
    Graph sub = g.induced(tail);
    int n_i = sub.vertex_count();
    long long burn = static_cast<long long>(
        std::ceil(opts.burn_in_constant * n_i *
                  std::log(std::max(2, n_i))));
    ChainState chain(sub, lambda, derive_seed(opts.seed, i));
    chain.run(burn);
    long long unoccupied = 0;
    for (long long s = 0; s < samples; ++s) {
      chain.run(n_i);
      unoccupied += chain.occupied_at(0) ? 0 : 1;
    }
    out.total_steps += burn + samples * n_i;
    double p_hat = static_cast<double>(unoccupied) / samples;
    if (p_hat <= opts.factor_floor)
      throw DegenerateFactor("factor " + std::to_string(i) +
                             " hit the sampling floor");
    out.factors.push_back(p_hat);
    out.log_z_hat -= std::log(p_hat);
    log_var += (1.0 - p_hat) / (p_hat * samples);
  }
  out.z_hat = std::exp(out.log_z_hat);
  out.log_half_width =
      normal_quantile(0.5 + opts.confidence / 2.0) * std::sqrt(log_var);
  return out;
}

// ---------------------------------------------------------------------------
// Burn-in probe for the heaviness classifiers.
// ---------------------------------------------------------------------------

struct BurnInOptions {
  double rho = 50.0;
  int radius = 1;
  long long horizon = 0;
  int buckets = 10;
  int replicates = 100;
  std::uint64_t seed = 1;
  int jobs = 1;
  bool packed_start = true;  // greedy maximal start; empty otherwise
};

/// Fraction of replicates whose configuration is rho-above-suspicion for
/// the radius at v, sampled at evenly spaced checkpoints of the horizon.
inline Report burn_in_probe(const Graph& g, double lambda, int v,
                            const BurnInOptions& opts) {
  Report report;
  report.experiment = "burn_in";
  report.inputs = {{"lambda", lambda}, {"vertex", v},
                   {"rho", opts.rho},  {"radius", opts.radius},
                   {"horizon", opts.horizon}, {"buckets", opts.buckets},
                   {"replicates", opts.replicates}, {"seed", opts.seed},
                   {"packed_start", opts.packed_start}};
  IndependentSet start = opts.packed_start
                             ? greedy_maximal_independent_set(g)
                             : IndependentSet::empty(g.vertex_count());

  std::vector<long long> checkpoints;
  for (int k = 0; k <= opts.buckets; ++k)
    checkpoints.push_back(opts.horizon * k / opts.buckets);

  std::vector<std::vector<double>> above(checkpoints.size());
  for (auto& row : above) row.assign(opts.replicates, 0.0);
  parallel_for(opts.jobs, opts.replicates, [&](int i) {
    ChainState chain(g, lambda, derive_seed(opts.seed, i), start);
    for (std::size_t k = 0; k < checkpoints.size(); ++k) {
      chain.run(checkpoints[k] - chain.step_count());
      above[k][i] = above_suspicion(g, chain.occupied(), v, opts.rho,
                                    opts.radius)
                        ? 1.0
                        : 0.0;
    }
  });

  for (std::size_t k = 0; k < checkpoints.size(); ++k) {
    std::string key = "fraction_t" + std::to_string(checkpoints[k]);
    report.metrics[key] = mean_with_ci(above[k], opts.seed);
    report.per_replicate[key] = above[k];
  }
  return report;
}

}  // namespace hardcore
