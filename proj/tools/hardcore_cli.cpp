// Subcommand-driven runner for the hard-core model lab.
//
// Exit codes: 0 success, 1 threshold/experiment failure, 2 usage or
// configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hardcore/bp.hpp"
#include "hardcore/config.hpp"
#include "hardcore/dynamics.hpp"
#include "hardcore/estimators.hpp"
#include "hardcore/graph.hpp"
#include "hardcore/model.hpp"
#include "hardcore/oracle.hpp"
#include "hardcore/report.hpp"

using namespace hardcore;

namespace {

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write to " + path);
  out << content;
}

std::string json_line(const nlohmann::json& j) { return j.dump(2) + "\n"; }

/// Common experiment options; explicit flags override config-file values.
struct CommonOpts {
  std::string config_path;
  std::string graph_file;
  double lambda = 0.0;
  double lambda_ratio = 0.0;
  double delta = 0.2;
  double eps = 0.1;
  int replicates = 100;
  long long burn_in = 0;
  long long window = 1000;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string out;
  std::string csv;

  CLI::Option* lambda_opt = nullptr;
  CLI::Option* ratio_opt = nullptr;
  CLI::Option* graph_opt = nullptr;
  CLI::Option* delta_opt = nullptr;
  CLI::Option* eps_opt = nullptr;
  CLI::Option* replicates_opt = nullptr;
  CLI::Option* burn_in_opt = nullptr;
  CLI::Option* window_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* jobs_opt = nullptr;
  CLI::Option* out_opt = nullptr;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file");
    graph_opt = cmd->add_option("--graph", graph_file, "edge-list file");
    lambda_opt = cmd->add_option("--lambda", lambda, "fugacity");
    ratio_opt = cmd->add_option("--lambda-ratio", lambda_ratio,
                                "fugacity as a ratio of lambda_c(Delta)");
    lambda_opt->excludes(ratio_opt);
    ratio_opt->excludes(lambda_opt);
    delta_opt = cmd->add_option("--delta", delta, "criticality slack");
    eps_opt = cmd->add_option("--eps", eps, "tolerance / accuracy target");
    replicates_opt =
        cmd->add_option("--replicates", replicates, "replicate count");
    burn_in_opt = cmd->add_option("--burn-in", burn_in, "burn-in steps");
    window_opt = cmd->add_option("--window", window, "window length");
    seed_opt = cmd->add_option("--seed", seed, "64-bit root seed");
    jobs_opt = cmd->add_option("--jobs", jobs, "max parallel replicates");
    out_opt = cmd->add_option("--out", out, "output path (default stdout)");
    cmd->add_option("--csv", csv, "also write per-replicate CSV here");
  }

  ExperimentConfig resolve() const {
    ExperimentConfig cfg;
    if (!config_path.empty()) {
      cfg = load_config(config_path);
    } else {
      cfg.seed = default_seed_from_env();
    }
    auto passed = [](const CLI::Option* o) { return o && o->count() > 0; };
    if (passed(graph_opt)) {
      cfg.graph_file = graph_file;
      cfg.generator.reset();
    }
    if (passed(lambda_opt)) {
      cfg.lambda = lambda;
      cfg.lambda_ratio.reset();
    }
    if (passed(ratio_opt)) {
      cfg.lambda_ratio = lambda_ratio;
      cfg.lambda.reset();
    }
    if (passed(delta_opt)) cfg.delta = delta;
    if (passed(eps_opt)) cfg.eps = eps;
    if (passed(replicates_opt)) cfg.replicates = replicates;
    if (passed(burn_in_opt)) cfg.burn_in = burn_in;
    if (passed(window_opt)) cfg.window = window;
    if (passed(seed_opt)) cfg.seed = seed;
    if (passed(jobs_opt)) cfg.jobs = jobs;
    if (passed(out_opt)) cfg.out = out;
    if (!cfg.graph_file && !cfg.generator)
      throw ConfigError("no graph source: pass --graph or a config file");
    if (!cfg.lambda && !cfg.lambda_ratio)
      throw ConfigError("no fugacity: pass --lambda or --lambda-ratio");
    return cfg;
  }
};

struct BpContext {
  Graph graph;
  double lambda = 0.0;
  ExperimentConfig cfg;
};

BpContext load_context(const CommonOpts& common) {
  BpContext ctx;
  ctx.cfg = common.resolve();
  ctx.graph = resolve_graph(ctx.cfg);
  ctx.lambda = resolve_lambda(ctx.cfg, ctx.graph);
  return ctx;
}

void emit_report(Report& report, const ExperimentConfig& cfg,
                 const std::string& csv_path) {
  nlohmann::json inputs = config_to_json(cfg);
  inputs["resolved"] = report.inputs;
  report.inputs = inputs;
  write_output(cfg.out, json_line(report.to_json()));
  if (!csv_path.empty()) write_output(csv_path, report.to_csv());
}

/// Reference field and coupling weights, with the regular-graph fallback.
std::pair<VertexField, PhiFunction> reference_and_phi(const Graph& g,
                                                      double lambda) {
  BpReference ref = bp_reference_field(g, lambda);
  return {ref.omega, build_phi(g, lambda, ref.omega)};
}

int run_verify(const std::string& suite) {
  int failures = 0;
  auto check = [&](const std::string& name, bool ok,
                   const std::string& detail = "") {
    std::printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", name.c_str(),
                detail.empty() ? "" : ": ", detail.c_str());
    failures += ok ? 0 : 1;
  };

  if (suite == "oracle" || suite == "all") {
    std::vector<std::pair<std::string, Graph>> graphs;
    for (int n = 1; n <= 10; ++n)
      graphs.emplace_back("path" + std::to_string(n), path_graph(n));
    for (int n = 3; n <= 10; ++n)
      graphs.emplace_back("cycle" + std::to_string(n), cycle_graph(n));
    for (int n = 2; n <= 6; ++n)
      graphs.emplace_back("complete" + std::to_string(n), complete_graph(n));
    graphs.emplace_back("star6", star_graph(6));
    graphs.emplace_back("petersen", petersen_graph());
    graphs.emplace_back("grid3x3", grid_graph(3, 3));
    for (std::uint64_t s : {11u, 22u})
      graphs.emplace_back("tree9_" + std::to_string(s), random_tree(9, s));
    for (std::uint64_t s : {7u, 8u})
      graphs.emplace_back("rc10_" + std::to_string(s),
                          random_connected(10, 5, s));

    bool z_ok = true, log_ok = true;
    for (const auto& [name, g] : graphs)
      for (double lambda : {0.25, 1.0, 2.0}) {
        PartitionOracle oracle(g, lambda);
        double z = oracle.partition();
        GibbsTable table = exact_distribution(g, lambda);
        double z_enum = 0.0;
        for (std::uint64_t state : table.states)
          z_enum += std::pow(lambda, std::popcount(state));
        z_ok = z_ok && std::abs(z / z_enum - 1.0) <= 1e-12;
        log_ok =
            log_ok && std::abs(oracle.log_partition() - std::log(z)) <= 1e-10;
      }
    check("oracle.partition_vs_enumeration", z_ok);
    check("oracle.log_route", log_ok);

    bool kernel_ok = true;
    for (const Graph& g : {path_graph(4), cycle_graph(5)}) {
      GlauberKernel kernel = exact_glauber_kernel(g, 1.3);
      for (const auto& row : kernel.rows) {
        double sum = 0.0;
        for (const auto& [j, p] : row) sum += p;
        kernel_ok = kernel_ok && std::abs(sum - 1.0) <= 1e-12;
      }
      std::vector<double> evolved = kernel.evolve(kernel.table.prob);
      for (std::size_t i = 0; i < evolved.size(); ++i)
        kernel_ok =
            kernel_ok && std::abs(evolved[i] - kernel.table.prob[i]) <= 1e-12;
    }
    check("oracle.kernel_stochastic_and_stationary", kernel_ok);

    bool self_ok = true;
    Graph pet = petersen_graph();
    PartitionOracle oracle(pet, 1.3);
    double z = oracle.partition();
    for (int v = 0; v < pet.vertex_count(); ++v) {
      std::uint64_t full = (std::uint64_t{1} << pet.vertex_count()) - 1;
      double z_minus = oracle.partition_of(full & ~(std::uint64_t{1} << v));
      self_ok = self_ok &&
                std::abs(z * (1.0 - oracle.marginal(v)) / z_minus - 1.0) <=
                    1e-12;
    }
    check("oracle.self_reducibility", self_ok);
  }

  if (suite == "bp" || suite == "all") {
    bool tree_ok = true;
    for (int n : {10, 25, 40})
      for (std::uint64_t s : {1u, 2u})
        for (double lambda : {0.1, 1.0, 4.0}) {
          Graph tree = random_tree(n, s);
          Report r = bp_accuracy(tree, lambda, n);
          tree_ok = tree_ok &&
                    r.metrics["parented_max_ratio_error"].estimate <= 1e-9;
        }
    check("bp.tree_exactness", tree_ok);

    bool fp_ok = true;
    Graph tree = random_tree(20, 3);
    DirectedEdgeIndex idx(tree);
    auto rep = fixed_point_H(tree, idx, 1.5, {1e-13, 300});
    fp_ok = rep.converged;
    if (fp_ok) {
      PartitionOracle oracle(tree, 1.5);
      for (int v = 0; v < tree.vertex_count() && fp_ok; ++v)
        for (int p : tree.neighbors(v)) {
          double ratio = 1.5 * rep.fixed_point[idx.id(v, p)];
          fp_ok = fp_ok &&
                  std::abs(ratio / (1.0 + ratio) -
                           oracle.conditional_marginal(v, p)) <= 1e-10;
        }
    }
    check("bp.parented_fixed_point_on_trees", fp_ok);

    auto d0 = first_certified_degree(0.2, 10000);
    bool scan_ok = d0.has_value();
    if (scan_ok)
      for (int d = *d0; d <= 10000 && scan_ok; d = d < 500 ? d + 1 : d + 131)
        scan_ok = uniqueness_margin(0.8 * lambda_c(d), d, 0.2) >= 0.0;
    check("bp.certified_margin_scan", scan_ok,
          d0 ? "first certified degree " + std::to_string(*d0) : "no onset");
  }

  std::printf("%s\n", failures == 0 ? "verify: all checks passed"
                                    : "verify: FAILURES present");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hard-core model lab: sampling, loopy BP, coupling metrics"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random regular graph");
  int gen_n = 0, gen_degree = 0;
  bool gen_bipartite = false;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("--n", gen_n, "vertices (per side when --bipartite)")
      ->required();
  gen->add_option("--delta-reg", gen_degree, "degree")->required();
  gen->add_flag("--bipartite", gen_bipartite, "bipartite configuration");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out", gen_out, "output path (default stdout)");

  // girth
  auto* girth_cmd =
      app.add_subcommand("girth", "girth and short-cycle counts");
  std::string girth_graph;
  int girth_gmax = 0;
  girth_cmd->add_option("--graph", girth_graph, "edge-list file")->required();
  girth_cmd->add_option("--short-cycles", girth_gmax,
                        "also count per-vertex cycles shorter than this");

  // bp
  CommonOpts bp_opts;
  auto* bp_cmd = app.add_subcommand("bp", "loopy BP marginal estimates");
  bp_opts.attach(bp_cmd);
  int bp_iters = 100;
  std::string bp_mode = "parented";
  bp_cmd->add_option("--iters", bp_iters, "message sweeps");
  bp_cmd->add_option("--mode", bp_mode, "parented|unrooted");

  // fixpoint
  CommonOpts fix_opts;
  auto* fix_cmd = app.add_subcommand("fixpoint", "BP fixed-point iteration");
  fix_opts.attach(fix_cmd);
  double fix_tol = 1e-10;
  int fix_max_iter = 5000;
  std::string fix_mode = "F";
  fix_cmd->add_option("--tol", fix_tol, "convergence tolerance (Psi metric)");
  fix_cmd->add_option("--max-iter", fix_max_iter, "iteration cap");
  fix_cmd->add_option("--mode", fix_mode, "F|H");

  // phi
  CommonOpts phi_opts;
  auto* phi_cmd =
      app.add_subcommand("phi", "coupling weights and contraction check");
  phi_opts.attach(phi_cmd);

  // sample
  CommonOpts sample_opts;
  auto* sample_cmd = app.add_subcommand("sample", "stream Glauber trajectory");
  sample_opts.attach(sample_cmd);
  long long sample_steps = 1000;
  long long snapshot_every = 100;
  sample_cmd->add_option("--steps", sample_steps, "total updates");
  sample_cmd->add_option("--snapshot-every", snapshot_every,
                         "record every k-th step");

  // mix
  CommonOpts mix_opts;
  auto* mix_cmd =
      app.add_subcommand("mix", "exact mixing time (small graphs)");
  mix_opts.attach(mix_cmd);
  long long mix_max_t = 1'000'000;
  mix_cmd->add_option("--max-t", mix_max_t, "step budget");

  // uniformity
  CommonOpts uni_opts;
  auto* uni_cmd =
      app.add_subcommand("uniformity", "local uniformity statistics");
  uni_opts.attach(uni_cmd);
  int uni_vertex = 0;
  bool uni_empty_start = false;
  uni_cmd->add_option("--vertex", uni_vertex, "probe vertex");
  uni_cmd->add_flag("--empty-start", uni_empty_start,
                    "start from the empty set instead of a packed one");

  // contraction
  CommonOpts con_opts;
  auto* con_cmd =
      app.add_subcommand("contraction", "path-coupling distance decay");
  con_opts.attach(con_cmd);
  long long con_steps = 0;
  std::string con_policy = "random";
  con_cmd->add_option("--steps", con_steps, "coupled steps (default 10n)");
  con_cmd->add_option("--start-policy", con_policy, "first|random|max-degree");

  // count
  CommonOpts count_opts;
  auto* count_cmd = app.add_subcommand("count", "partition function estimate");
  count_opts.attach(count_cmd);
  double count_confidence = 0.95;
  count_cmd->add_option("--confidence", count_confidence,
                        "interval confidence level");

  // burnin
  CommonOpts burn_opts;
  auto* burn_cmd = app.add_subcommand("burnin", "above-suspicion probe");
  burn_opts.attach(burn_cmd);
  int burn_vertex = 0, burn_radius = 1, burn_buckets = 10;
  double burn_rho = 2.0;
  long long burn_horizon = 0;
  bool burn_empty_start = false;
  burn_cmd->add_option("--vertex", burn_vertex, "probe vertex");
  burn_cmd->add_option("--rho", burn_rho, "heaviness density");
  burn_cmd->add_option("--radius", burn_radius, "suspicion radius");
  burn_cmd->add_option("--horizon", burn_horizon,
                       "total steps (default 10 n log Delta)");
  burn_cmd->add_option("--buckets", burn_buckets, "checkpoint count");
  burn_cmd->add_flag("--empty-start", burn_empty_start,
                     "start empty instead of packed");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "built-in check suites");
  std::string verify_suite = "all";
  verify_cmd->add_option("--suite", verify_suite, "oracle|bp|all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) {
      Graph g = gen_bipartite
                    ? random_regular_bipartite(gen_n, gen_degree, gen_seed)
                    : random_regular(gen_n, gen_degree, gen_seed);
      write_output(gen_out, save_edge_list(g));
      return 0;
    }

    if (girth_cmd->parsed()) {
      std::ifstream in(girth_graph);
      if (!in) throw ConfigError("cannot open graph file: " + girth_graph);
      std::stringstream buffer;
      buffer << in.rdbuf();
      Graph g = load_edge_list(buffer.str());
      nlohmann::json j;
      int gi = girth(g);
      if (gi == kInfiniteGirth)
        j["girth"] = "infinity";
      else
        j["girth"] = gi;
      if (girth_gmax >= 3) {
        std::vector<long long> counts;
        for (int v = 0; v < g.vertex_count(); ++v)
          counts.push_back(short_cycle_count(g, v, girth_gmax));
        j["short_cycles"] = {{"g_max", girth_gmax}, {"per_vertex", counts}};
      }
      write_output("", json_line(j));
      return 0;
    }

    if (bp_cmd->parsed()) {
      BpContext ctx = load_context(bp_opts);
      DirectedEdgeIndex index(ctx.graph);
      BpMode mode = bp_mode_from_string(bp_mode);
      LoopyBpResult r =
          loopy_bp_marginals(ctx.graph, index, ctx.lambda, bp_iters, mode);
      std::string dump;
      if (mode == BpMode::unrooted) {
        for (int v = 0; v < ctx.graph.vertex_count(); ++v)
          dump +=
              std::to_string(v) + " " + format_double(r.vertex_q[v]) + "\n";
      } else {
        for (int e = 0; e < index.count(); ++e) {
          auto [tail, head] = index.endpoints(e);
          dump += std::to_string(tail) + " " + std::to_string(head) + " " +
                  format_double(r.edge_q[e]) + "\n";
        }
      }
      write_output(ctx.cfg.out, dump);
      return 0;
    }

    if (fix_cmd->parsed()) {
      BpContext ctx = load_context(fix_opts);
      nlohmann::json j;
      j["inputs"] = config_to_json(ctx.cfg);
      j["mode"] = fix_mode;
      FixedPointOptions opts{fix_tol, fix_max_iter};
      bool converged = false;
      if (fix_mode == "F") {
        auto rep = fixed_point_F(ctx.graph, ctx.lambda, opts);
        converged = rep.converged;
        j["converged"] = rep.converged;
        j["iterations"] = rep.iterations;
        j["final_residual"] = rep.final_residual;
        j["contraction_factors"] = rep.contraction_factors;
        j["fixed_point"] = rep.fixed_point;
      } else if (fix_mode == "H") {
        DirectedEdgeIndex index(ctx.graph);
        auto rep = fixed_point_H(ctx.graph, index, ctx.lambda, opts);
        converged = rep.converged;
        j["converged"] = rep.converged;
        j["iterations"] = rep.iterations;
        j["final_residual"] = rep.final_residual;
        j["contraction_factors"] = rep.contraction_factors;
        nlohmann::json edges = nlohmann::json::array();
        for (int e = 0; e < index.count(); ++e) {
          auto [tail, head] = index.endpoints(e);
          edges.push_back({tail, head, rep.fixed_point[e]});
        }
        j["fixed_point"] = edges;
      } else {
        throw ConfigError("unknown fixpoint mode: " + fix_mode);
      }
      write_output(ctx.cfg.out, json_line(j));
      return converged ? 0 : 1;
    }

    if (phi_cmd->parsed()) {
      BpContext ctx = load_context(phi_opts);
      BpReference ref = bp_reference_field(ctx.graph, ctx.lambda);
      PhiFunction phi = build_phi(ctx.graph, ctx.lambda, ref.omega);
      auto contraction = verify_phi_contraction(ctx.graph, ctx.lambda,
                                                ref.omega, phi, ctx.cfg.delta);
      nlohmann::json j;
      j["inputs"] = config_to_json(ctx.cfg);
      j["alpha"] = alpha(ctx.lambda, std::max(2, ctx.graph.max_degree()));
      j["uniqueness_margin"] =
          uniqueness_margin(ctx.lambda, ctx.graph.max_degree(), ctx.cfg.delta);
      j["reference_from_iteration"] = ref.from_iteration;
      j["phi"] = phi;
      j["max_ratio"] = contraction.max_ratio;
      j["threshold"] = contraction.threshold;
      j["satisfied"] = contraction.satisfied;
      auto d0 = first_certified_degree(ctx.cfg.delta, 10000);
      if (d0) j["first_certified_degree"] = *d0;
      write_output(ctx.cfg.out, json_line(j));
      return contraction.satisfied ? 0 : 1;
    }

    if (sample_cmd->parsed()) {
      BpContext ctx = load_context(sample_opts);
      ChainState chain(ctx.graph, ctx.lambda, ctx.cfg.seed);
      chain.run(ctx.cfg.burn_in);
      std::string out;
      for (long long step = 0; step < sample_steps; step += snapshot_every) {
        chain.run(std::min(snapshot_every, sample_steps - step));
        out += snapshot_line(chain.step_count(), chain.occupied());
      }
      write_output(ctx.cfg.out, out);
      return 0;
    }

    if (mix_cmd->parsed()) {
      BpContext ctx = load_context(mix_opts);
      long long t =
          mixing_time_exact(ctx.graph, ctx.lambda, ctx.cfg.eps, {}, mix_max_t);
      nlohmann::json j;
      j["inputs"] = config_to_json(ctx.cfg);
      j["mixing_time"] = t;
      write_output(ctx.cfg.out, json_line(j));
      return 0;
    }

    if (uni_cmd->parsed()) {
      BpContext ctx = load_context(uni_opts);
      auto [omega, phi] = reference_and_phi(ctx.graph, ctx.lambda);
      UniformityOptions opts;
      opts.eps = ctx.cfg.eps;
      opts.burn_in = ctx.cfg.burn_in;
      opts.window = ctx.cfg.window;
      opts.replicates = ctx.cfg.replicates;
      opts.seed = ctx.cfg.seed;
      opts.jobs = ctx.cfg.jobs;
      opts.worst_start = !uni_empty_start;
      Report report = uniformity_experiment(ctx.graph, ctx.lambda, uni_vertex,
                                            omega, phi, opts);
      emit_report(report, ctx.cfg, uni_opts.csv);
      return 0;
    }

    if (con_cmd->parsed()) {
      BpContext ctx = load_context(con_opts);
      auto [omega, phi] = reference_and_phi(ctx.graph, ctx.lambda);
      CouplingOptions opts;
      opts.steps = con_steps > 0 ? con_steps : 10LL * ctx.graph.vertex_count();
      opts.replicates = ctx.cfg.replicates;
      opts.start_policy = start_policy_from_string(con_policy);
      opts.seed = ctx.cfg.seed;
      opts.jobs = ctx.cfg.jobs;
      Report report = coupling_contraction(ctx.graph, ctx.lambda, phi, opts);
      emit_report(report, ctx.cfg, con_opts.csv);
      return 0;
    }

    if (count_cmd->parsed()) {
      BpContext ctx = load_context(count_opts);
      ZOptions opts;
      opts.eps = ctx.cfg.eps;
      opts.confidence = count_confidence;
      opts.seed = ctx.cfg.seed;
      ZEstimate z = estimate_Z(ctx.graph, ctx.lambda, opts);
      nlohmann::json j;
      j["experiment"] = "count";
      j["inputs"] = config_to_json(ctx.cfg);
      j["z_hat"] = z.z_hat;
      j["log_z_hat"] = z.log_z_hat;
      j["log_half_width"] = z.log_half_width;
      j["lower"] = z.lower();
      j["upper"] = z.upper();
      j["total_steps"] = z.total_steps;
      write_output(ctx.cfg.out, json_line(j));
      return 0;
    }

    if (burn_cmd->parsed()) {
      BpContext ctx = load_context(burn_opts);
      BurnInOptions opts;
      opts.rho = burn_rho;
      opts.radius = burn_radius;
      opts.horizon =
          burn_horizon > 0
              ? burn_horizon
              : static_cast<long long>(
                    10.0 * ctx.graph.vertex_count() *
                    std::log(std::max(2, ctx.graph.max_degree())));
      opts.buckets = burn_buckets;
      opts.replicates = ctx.cfg.replicates;
      opts.seed = ctx.cfg.seed;
      opts.jobs = ctx.cfg.jobs;
      opts.packed_start = !burn_empty_start;
      Report report = burn_in_probe(ctx.graph, ctx.lambda, burn_vertex, opts);
      emit_report(report, ctx.cfg, burn_opts.csv);
      return 0;
    }

    if (verify_cmd->parsed()) {
      if (verify_suite != "oracle" && verify_suite != "bp" &&
          verify_suite != "all")
        throw ConfigError("unknown suite: " + verify_suite);
      return run_verify(verify_suite);
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid argument: %s\n", e.what());
    return 2;
  } catch (const BudgetExceeded& e) {
    std::fprintf(stderr, "budget exceeded: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
