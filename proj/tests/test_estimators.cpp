#include <cmath>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "brute.hpp"
#include "corpus.hpp"
#include "hardcore/estimators.hpp"

using namespace hardcore;

TEST_CASE("normal_quantile and mean_with_ci") {
  CHECK(normal_quantile(0.975) == Catch::Approx(1.959964).margin(1e-5));
  CHECK(normal_quantile(0.5) == Catch::Approx(0.0).margin(1e-9));
  MetricEstimate m = mean_with_ci({1.0, 2.0, 3.0, 4.0}, 7);
  CHECK(m.estimate == Catch::Approx(2.5));
  CHECK(m.replicates == 4);
  CHECK(m.half_width ==
        Catch::Approx(1.959964 * std::sqrt(5.0 / 3.0) / 2.0).epsilon(1e-4));
}

TEST_CASE("tv_exact basics") {
  Graph one(1, {});
  GlauberKernel k1 = exact_glauber_kernel(one, 1.0);
  CHECK(tv_exact(k1, 0, 0) == Catch::Approx(0.5));
  // A single-vertex chain resamples exactly from mu in one step.
  CHECK(tv_exact(k1, 1, 0) == Catch::Approx(0.0).margin(1e-15));
  CHECK(tv_exact(k1, 5, 0) == Catch::Approx(0.0).margin(1e-15));

  Graph p4 = path_graph(4);
  double lambda = 1.5;
  GlauberKernel kernel = exact_glauber_kernel(p4, lambda);
  double z = exact_partition(p4, lambda);
  CHECK(tv_exact(kernel, 0, 0) == Catch::Approx(1.0 - 1.0 / z));

  double prev = 2.0;
  for (long long t = 0; t <= 12; ++t) {
    double tv = tv_exact(kernel, t, 0b1001);
    REQUIRE(tv <= prev + 1e-14);
    prev = tv;
  }
}

TEST_CASE("tv_exact agrees with dense matrix powering") {
  for (const Graph& g : {cycle_graph(5), petersen_graph()}) {
    double lambda = 0.8;
    GlauberKernel kernel = exact_glauber_kernel(g, lambda);
    const std::size_t m = kernel.size();
    std::vector<std::vector<double>> dense(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i)
      for (const auto& [j, p] : kernel.rows[i]) dense[i][j] = p;

    for (std::uint64_t start : {std::uint64_t{0}, std::uint64_t{0b00101}}) {
      std::vector<double> dist(m, 0.0);
      dist[kernel.table.index_of(start)] = 1.0;
      for (long long t = 1; t <= 7; ++t) {
        std::vector<double> next(m, 0.0);
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < m; ++j)
            next[j] += dist[i] * dense[i][j];
        dist = next;
        double tv = 0.0;
        for (std::size_t i = 0; i < m; ++i)
          tv += std::abs(dist[i] - kernel.table.prob[i]);
        REQUIRE(tv_exact(kernel, t, start) ==
                Catch::Approx(0.5 * tv).margin(1e-12));
      }
    }
  }
}

TEST_CASE("mixing_time_exact") {
  Graph one(1, {});
  CHECK(mixing_time_exact(one, 1.0, 0.25) == 1);

  // Single edge at lambda = 1; frozen from the first verified run.
  Graph edge(2, {{0, 1}});
  CHECK(mixing_time_exact(edge, 1.0, 0.25) == 3);

  Graph p4 = path_graph(4);
  long long strict = mixing_time_exact(p4, 1.0, 0.05);
  long long loose = mixing_time_exact(p4, 1.0, 0.3);
  CHECK(strict >= loose);

  // Start-set restriction can only shorten the answer.
  std::vector<std::uint64_t> only_empty{0};
  CHECK(mixing_time_exact(p4, 1.0, 0.05, {}, 1'000'000, only_empty) <= strict);

  OracleLimits tight;
  tight.max_states = 2;
  CHECK_THROWS_AS(mixing_time_exact(p4, 1.0, 0.25, tight), BudgetExceeded);
}

TEST_CASE("uniformity on a star is exactly computable") {
  Graph star = star_graph(3);
  double lambda = 0.5;
  auto rep = fixed_point_F(star, lambda, {1e-12, 2000});
  REQUIRE(rep.converged);
  PhiFunction phi = build_phi(star, lambda, rep.fixed_point);

  // The center always has S = 3 (leaves have no other neighbors), so the
  // stationary check is deterministic: |3 - 3 omega*(leaf)| vs eps*Delta.
  double gap = std::abs(3.0 - 3.0 * rep.fixed_point[1]);

  UniformityOptions strict;
  strict.eps = 0.05;
  strict.replicates = 8;
  strict.window = 50;
  REQUIRE(gap > strict.eps * 3);
  Report r1 = uniformity_experiment(star, lambda, 0, rep.fixed_point, phi,
                                    strict);
  CHECK(r1.metrics["stationary_fraction"].estimate == 0.0);

  UniformityOptions loose = strict;
  loose.eps = 0.3;
  REQUIRE(gap <= loose.eps * 3);
  Report r2 = uniformity_experiment(star, lambda, 0, rep.fixed_point, phi,
                                    loose);
  CHECK(r2.metrics["stationary_fraction"].estimate == 1.0);

  // A vacuous tolerance makes every check pass.
  UniformityOptions vacuous = strict;
  vacuous.eps = 10.0;
  Report r3 = uniformity_experiment(star, lambda, 0, rep.fixed_point, phi,
                                    vacuous);
  CHECK(r3.metrics["stationary_fraction"].estimate == 1.0);
  CHECK(r3.metrics["dynamic_fraction"].estimate == 1.0);
}

TEST_CASE("uniformity fractions on the Heawood graph") {
  Graph hw = heawood_graph();
  double lambda = 0.5 * lambda_c(3);
  auto ref = bp_reference_field(hw, lambda, {1e-10, 800});
  PhiFunction phi = build_phi(hw, lambda, ref.omega);
  UniformityOptions opts;
  opts.eps = 0.3;
  opts.burn_in = 1000;
  opts.window = 1000;
  opts.replicates = 400;
  opts.seed = 1;
  Report r = uniformity_experiment(hw, lambda, 0, ref.omega, phi, opts);
  // Frozen from the first verified run; drift beyond 10% fails.
  CHECK(r.metrics["stationary_fraction"].estimate ==
        Catch::Approx(0.46336112).epsilon(0.10));
  CHECK(r.metrics["dynamic_fraction"].estimate == 0.0);
  CHECK(r.metrics["pointwise_fraction"].estimate ==
        Catch::Approx(0.44834750).epsilon(0.10));
}

TEST_CASE("bp_accuracy is exact on trees") {
  Graph tree = random_tree(30, 41);
  Report r = bp_accuracy(tree, 4.0, 40);
  CHECK(r.metrics["parented_max_ratio_error"].estimate <= 1e-9);
}

TEST_CASE("bp_accuracy on the 4-cycle") {
  Report r = bp_accuracy(cycle_graph(4), 1.0, 60);
  // Frozen from the first verified run; drift beyond 10% fails.
  CHECK(r.metrics["parented_max_ratio_error"].estimate ==
        Catch::Approx(0.04508497).epsilon(0.10));
  CHECK(r.metrics["unrooted_max_ratio_error"].estimate ==
        Catch::Approx(0.11185269).epsilon(0.10));
}

TEST_CASE("coupling_contraction") {
  // Single-vertex graph: the first update of the sole vertex coalesces.
  Graph one(1, {});
  CouplingOptions opts;
  opts.steps = 5;
  opts.replicates = 20;
  opts.start_policy = StartPolicy::first_vertex;
  opts.seed = 3;
  Report r = coupling_contraction(one, 1.0, {1.0}, opts);
  CHECK(r.metrics["mean_hamming"].estimate == 0.0);
  CHECK(r.metrics["coalesced_fraction"].estimate == 1.0);

  // Weighted distance dominates Hamming whenever Phi >= 1.
  Graph g = random_regular(100, 3, 15);
  double lambda = 0.3 * lambda_c(3);
  auto fp = fixed_point_F(g, lambda, {1e-11, 4000});
  REQUIRE(fp.converged);
  PhiFunction phi = build_phi(g, lambda, fp.fixed_point);
  CouplingOptions big;
  big.steps = 400;
  big.replicates = 60;
  big.seed = 11;
  big.jobs = 2;
  Report rb = coupling_contraction(g, lambda, phi, big);
  const auto& h = rb.per_replicate.at("hamming");
  const auto& w = rb.per_replicate.at("weighted");
  for (std::size_t i = 0; i < h.size(); ++i) REQUIRE(w[i] >= h[i] - 1e-12);

  CHECK(start_policy_from_string("random") == StartPolicy::random_vertex);
  CHECK_THROWS_AS(start_policy_from_string("bogus"), std::invalid_argument);
}

TEST_CASE("estimate_Z on the empty graph") {
  Graph empty(10, {});
  double lambda = 1.0;
  double truth = 10.0 * std::log(2.0);
  const int trials = 200;
  double mean = 0.0, ss = 0.0;
  std::vector<double> logs(trials);
  for (int i = 0; i < trials; ++i) {
    ZOptions opts;
    opts.eps = 0.5;
    opts.seed = derive_seed(42, i);
    logs[i] = estimate_Z(empty, lambda, opts).log_z_hat;
    mean += logs[i];
  }
  mean /= trials;
  for (double v : logs) ss += (v - mean) * (v - mean);
  double se = std::sqrt(ss / (trials - 1)) / std::sqrt(double(trials));
  CHECK(std::abs(mean - truth) <= 3.0 * se);
}

TEST_CASE("estimate_Z on the triangle") {
  Graph tri = cycle_graph(3);
  int within5 = 0;
  for (int i = 0; i < 10; ++i) {
    ZOptions opts;
    opts.eps = 0.05;
    opts.seed = derive_seed(1000, i);
    ZEstimate z = estimate_Z(tri, 1.0, opts);
    REQUIRE(std::abs(z.z_hat / 4.0 - 1.0) <= 0.10);
    within5 += std::abs(z.z_hat / 4.0 - 1.0) <= 0.05 ? 1 : 0;
    CHECK(z.lower() <= z.upper());
  }
  CHECK(within5 >= 9);
}

TEST_CASE("estimate_Z degenerate factor") {
  Graph one(1, {});
  ZOptions opts;
  opts.eps = 1.0;
  opts.seed = 5;
  CHECK_THROWS_AS(estimate_Z(one, 1e7, opts), DegenerateFactor);
  CHECK_THROWS_AS(estimate_Z(one, -1.0, opts), std::domain_error);
}

TEST_CASE("burn_in_probe") {
  // Empty start is above suspicion immediately.
  Graph g = random_regular(60, 4, 10);
  BurnInOptions opts;
  opts.rho = 2.2;
  opts.radius = 1;
  opts.horizon = 100;
  opts.buckets = 2;
  opts.replicates = 10;
  opts.packed_start = false;
  Report r = burn_in_probe(g, 0.5, 0, opts);
  CHECK(r.metrics["fraction_t0"].estimate == 1.0);
}

TEST_CASE("burn_in_probe from a packed bipartite side") {
  Graph g = random_regular_bipartite(250, 8, 4);
  double lambda = 0.7 * lambda_c(8);
  BurnInOptions opts;
  opts.rho = 2.2;
  opts.radius = 1;
  opts.horizon = 10400;
  opts.buckets = 10;
  opts.replicates = 150;
  opts.seed = 1;
  Report r = burn_in_probe(g, lambda, 0, opts);
  // Packed side makes vertex 0 heavy at the start.
  CHECK(r.metrics["fraction_t0"].estimate == 0.0);
  // Frozen from the first verified run; drift beyond 10% fails.
  CHECK(r.metrics["fraction_t1040"].estimate ==
        Catch::Approx(0.433333).epsilon(0.10));
  CHECK(r.metrics["fraction_t2080"].estimate ==
        Catch::Approx(0.933333).epsilon(0.10));
  CHECK(r.metrics["fraction_t10400"].estimate ==
        Catch::Approx(1.0).epsilon(0.10));
}

TEST_CASE("reports are reproducible and timing stays out of files") {
  Graph hw = heawood_graph();
  double lambda = 1.0;
  auto ref = bp_reference_field(hw, lambda);
  PhiFunction phi = build_phi(hw, lambda, ref.omega);
  UniformityOptions opts;
  opts.eps = 0.3;
  opts.burn_in = 50;
  opts.window = 100;
  opts.replicates = 30;
  opts.seed = 9;

  opts.jobs = 1;
  Report serial = uniformity_experiment(hw, lambda, 0, ref.omega, phi, opts);
  serial.wall_clock_seconds = 1.23;
  opts.jobs = 2;
  Report threaded = uniformity_experiment(hw, lambda, 0, ref.omega, phi, opts);
  threaded.wall_clock_seconds = 4.56;

  CHECK(serial.to_json().dump(2) == threaded.to_json().dump(2));
  CHECK(serial.to_csv() == threaded.to_csv());
  CHECK(serial.to_json().contains("wall_clock_seconds") == false);
  CHECK(serial.to_json(true)["wall_clock_seconds"] == 1.23);

  std::string csv = serial.to_csv();
  CHECK(csv.rfind("replicate,dynamic_held,pointwise", 0) == 0);
}
