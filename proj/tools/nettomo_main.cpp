#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nettomo/json_io.hpp"
#include "nettomo/routing.hpp"
#include "nettomo/sim.hpp"
#include "nettomo/sweep.hpp"
#include "nettomo/verify.hpp"

namespace {

using namespace nettomo;

std::string walk_str(Walk const& w, Network const& net) {
  std::string s = std::to_string(w.vertices[0]);
  for (std::size_t i = 0; i < w.edge_idx.size(); ++i) {
    s += " -" + net.edges[w.edge_idx[i]].id + "- ";
    s += std::to_string(w.vertices[i + 1]);
  }
  return s;
}

void print_cover(SubgraphCover const& cover, Network const& net) {
  int bound = cover_bound(net);
  int count = static_cast<int>(cover.subgraphs.size());
  std::printf("cover: %d subgraph%s, bound %d (%s)\n", count, count == 1 ? "" : "s", bound,
              count == bound ? "attained" : "not attained");
  for (std::size_t s = 0; s < cover.subgraphs.size(); ++s) {
    auto const& sg = cover.subgraphs[s];
    std::string edges, probes;
    for (int e : sg.edges) edges += (edges.empty() ? "" : ",") + net.edges[e].id;
    for (int p : sg.probe_idx) probes += (probes.empty() ? "" : ",") + ("P" + std::to_string(p + 1));
    std::printf("  S%zu: edges {%s}  probes {%s}\n", s + 1, edges.c_str(), probes.c_str());
  }
}

int run_plan(std::string const& network_path, std::string const& out_path, double N, double Na) {
  Network net = load_network(network_path);
  std::vector<Walk> walks = find_probes(net);

  std::vector<Probe> plan;
  for (auto const& w : walks) {
    Probe p;
    p.walk = w;
    p.N = N;
    p.Na = Na;
    plan.push_back(std::move(p));
  }

  std::printf("probes (%zu):\n", plan.size());
  for (std::size_t i = 0; i < plan.size(); ++i)
    std::printf("  P%zu: %s\n", i + 1, walk_str(plan[i].walk, net).c_str());

  SubgraphCover cover = group_cover(walks, net);
  auto violations = verify_cover(cover, net);
  print_cover(cover, net);
  for (auto const& v : violations) std::printf("  cover violation: %s\n", v.c_str());

  bool ok = is_identifiable(measurement_matrix(plan, net));
  std::printf("identifiable: %s\n", ok ? "yes" : "no");

  if (!out_path.empty()) {
    write_text_file(out_path, plan_to_json(plan).dump(2) + "\n");
    std::printf("plan written to %s\n", out_path.c_str());
  }
  return violations.empty() ? 0 : 1;
}

int run_analyze(std::string const& network_path, std::string const& plan_path,
                std::string const& out_path) {
  Network net = load_network(network_path);
  std::vector<Probe> plan = load_plan(plan_path, net);
  FimReport r = network_fim(plan, net);

  std::printf("probes: %zu   edges: %zu\n", plan.size(), net.edges.size());
  std::printf("identifiable: %s\n", r.identifiable ? "yes" : "no");
  if (r.identifiable) {
    std::printf("det(FIM):      %.12g\n", r.det);
    std::printf("Tr(FIM^-1):    %.12g\n", r.trace_inv);
    if (r.lemma_applicable) {
      std::printf("closed forms:  det %.12g  (rel dev %.2e)\n", r.det_closed,
                  r.det_rel_discrepancy);
      std::printf("               tr  %.12g  (rel dev %.2e)\n", r.trace_inv_closed,
                  r.trace_inv_rel_discrepancy);
    }
    std::printf("per-probe channels:\n");
    for (auto const& pc : r.per_probe)
      std::printf("  %-4s eta_P %.6g   FI %.6g   copies %d\n", pc.probe_id.c_str(), pc.eta_P,
                  pc.fi, pc.copies);
  } else {
    std::printf("the plan does not determine every edge; estimation would not converge\n");
  }

  if (!out_path.empty()) {
    write_text_file(out_path, fim_report_to_json(r).dump(2) + "\n");
    std::printf("report written to %s\n", out_path.c_str());
  }
  return 0;
}

int run_compare(std::string const& network_path, std::vector<std::string> const& plan_paths,
                std::string const& out_path) {
  Network net = load_network(network_path);
  std::vector<Probe> a = load_plan(plan_paths[0], net);
  std::vector<Probe> b = load_plan(plan_paths[1], net);
  PlanComparison cmp = compare_plans(a, b, net);

  std::printf("det(FIM_b)/det(FIM_a):       %.12g", cmp.det_ratio);
  if (cmp.a.lemma_applicable && cmp.b.lemma_applicable)
    std::printf("   (closed %.12g)", cmp.det_ratio_closed);
  std::printf("\n");
  std::printf("Tr(FIM_b^-1)-Tr(FIM_a^-1):   %.12g", cmp.trace_inv_delta);
  if (cmp.a.lemma_applicable && cmp.b.lemma_applicable)
    std::printf("   (weighted %.12g)", cmp.trace_delta_weighted);
  std::printf("\n");
  char const* det_word = cmp.det_ratio > 1 ? "b" : (cmp.det_ratio < 1 ? "a" : "neither");
  char const* tr_word =
      cmp.trace_inv_delta < 0 ? "b" : (cmp.trace_inv_delta > 0 ? "a" : "neither");
  std::printf("better by det: plan %s   better by trace: plan %s\n", det_word, tr_word);

  if (!out_path.empty()) {
    write_text_file(out_path, comparison_to_json(cmp).dump(2) + "\n");
    std::printf("report written to %s\n", out_path.c_str());
  }
  return 0;
}

int run_simulate(std::string const& network_path, std::string const& plan_path,
                 std::string const& out_path, int trials, std::uint64_t seed, bool serial) {
  Network net = load_network(network_path);
  std::vector<Probe> plan = load_plan(plan_path, net);
  SimulationSummary s = run_simulation(plan, net, trials, seed, !serial);

  std::printf("trials: %d   converged: %d   seed: %llu\n", s.trials, s.converged_trials,
              static_cast<unsigned long long>(s.seed));
  std::printf("%-6s %10s %12s %12s %12s %12s\n", "edge", "true", "mean", "bias", "variance",
              "crb");
  for (std::size_t i = 0; i < s.true_eta.size(); ++i)
    std::printf("%-6s %10.6f %12.8f %12.3e %12.4e %12.4e\n", net.edges[i].id.c_str(),
                s.true_eta[i], s.mean_estimate[i], s.bias[i], s.variance[i], s.crb_diag[i]);
  std::printf("total variance: %.6e   CRB trace: %.6e   ratio: %.4f\n",
              s.empirical_total_variance, s.crb_trace, s.ratio);

  if (!out_path.empty()) {
    write_text_file(out_path, simulation_to_json(s, net).dump(2) + "\n");
    std::printf("summary written to %s\n", out_path.c_str());
  }
  return 0;
}

int run_sweep(std::string const& mode_name, std::string const& out_path, double N, double Na,
              std::string const& grid, bool serial) {
  SweepMode mode = sweep_mode_from_string(mode_name);
  GridSpec g = parse_grid(grid);
  SweepResult result = sweep_grid(mode, N, Na, g, g, !serial);
  std::string csv = sweep_csv(result);
  if (out_path.empty()) {
    std::fputs(csv.c_str(), stdout);
    std::fputs(sweep_summary(result).c_str(), stderr);
  } else {
    write_text_file(out_path, csv);
    std::fputs(sweep_summary(result).c_str(), stdout);
    std::printf("grid written to %s\n", out_path.c_str());
  }
  return 0;
}

int run_verify(std::string const& scope, std::uint64_t seed, double bias) {
  VerifyOptions options;
  options.seed = seed;
  options.cn_bias = bias;
  VerifyReport report;
  if (scope == "physics")
    report = verify_physics(options);
  else if (scope == "claim1")
    report = verify_claim1(options);
  else if (scope == "lemma")
    report = verify_lemma(options);
  else if (scope == "appendixA")
    report = verify_appendix_a(options);
  else
    report = verify_all(options);

  int failed = 0;
  for (auto const& c : report.checks) {
    std::printf("[%s] %-38s %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
    if (!c.pass) ++failed;
  }
  if (failed == 0) {
    std::printf("all %zu checks passed\n", report.checks.size());
    return 0;
  }
  std::printf("%d of %zu checks FAILED\n", failed, report.checks.size());
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"probe planning and Fisher-information analysis for optical network tomography"};
  app.require_subcommand(1);

  std::string network_path, plan_path, out_path;
  std::vector<std::string> plan_paths;
  std::string grid = "0.02:1:50";
  std::string sweep_mode = "independent-split";
  std::string verify_scope = "all";
  double N = 100.0, Na = 0.558, bias = 0.0;
  std::uint64_t seed = 1;
  int trials = 100;
  bool serial = false;

  auto* plan_cmd = app.add_subcommand("plan", "build a probe plan covering every edge");
  plan_cmd->add_option("--network", network_path, "network JSON")->required();
  plan_cmd->add_option("--out", out_path, "write the plan JSON here");
  plan_cmd->add_option("--N", N, "signal photons per probe");
  plan_cmd->add_option("--Na", Na, "ancilla photons per probe");

  auto* analyze_cmd = app.add_subcommand("analyze", "FIM, determinant and CRB of a plan");
  analyze_cmd->add_option("--network", network_path, "network JSON")->required();
  analyze_cmd->add_option("--plan", plan_path, "plan JSON")->required();
  analyze_cmd->add_option("--out", out_path, "write the full report JSON here");

  auto* compare_cmd = app.add_subcommand("compare", "compare two plans over the same walks");
  compare_cmd->add_option("--network", network_path, "network JSON")->required();
  compare_cmd->add_option("--plan", plan_paths, "plan JSON (give twice: a then b)")
      ->required()
      ->expected(2);
  compare_cmd->add_option("--out", out_path, "write the comparison JSON here");

  auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo estimation against the CRB");
  sim_cmd->add_option("--network", network_path, "network JSON with all transmissivities")
      ->required();
  sim_cmd->add_option("--plan", plan_path, "plan JSON")->required();
  sim_cmd->add_option("--out", out_path, "write the summary JSON here");
  sim_cmd->add_option("--trials", trials, "Monte-Carlo trials")->check(CLI::Range(2, 1000000));
  sim_cmd->add_option("--seed", seed, "RNG seed");
  sim_cmd->add_flag("--serial", serial, "single-threaded (results are identical)");

  auto* sweep_cmd = app.add_subcommand("sweep", "two-channel squeezed-vs-entangled grid");
  sweep_cmd->add_option("mode", sweep_mode, "independent-split or shared-split")
      ->check(CLI::IsMember({"independent-split", "shared-split"}));
  sweep_cmd->add_option("--grid", grid, "A:B:STEPS for both axes (default 0.02:1:50)");
  sweep_cmd->add_option("--N", N, "signal photons");
  sweep_cmd->add_option("--Na", Na, "ancilla photons");
  sweep_cmd->add_option("--out", out_path, "write the CSV here (default stdout)");
  sweep_cmd->add_flag("--serial", serial, "single-threaded (results are identical)");

  auto* verify_cmd = app.add_subcommand("verify", "run the numerical cross-check suites");
  verify_cmd->add_option("scope", verify_scope, "physics, claim1, lemma, appendixA or all")
      ->check(CLI::IsMember({"physics", "claim1", "lemma", "appendixA", "all"}));
  verify_cmd->add_option("--seed", seed, "RNG seed for the random scenarios");
  verify_cmd->add_option("--bias", bias, "corrupt one closed form per suite (harness self-test)")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(plan_cmd)) return run_plan(network_path, out_path, N, Na);
    if (app.got_subcommand(analyze_cmd)) return run_analyze(network_path, plan_path, out_path);
    if (app.got_subcommand(compare_cmd)) return run_compare(network_path, plan_paths, out_path);
    if (app.got_subcommand(sim_cmd))
      return run_simulate(network_path, plan_path, out_path, trials, seed, serial);
    if (app.got_subcommand(sweep_cmd)) return run_sweep(sweep_mode, out_path, N, Na, grid, serial);
    if (app.got_subcommand(verify_cmd)) return run_verify(verify_scope, seed, bias);
  } catch (std::exception const& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
