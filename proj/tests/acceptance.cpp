// Acceptance gate: one pass/fail line per shipped guarantee, each with a wall
// clock budget. Exit 0 iff every line passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nettomo/json_io.hpp"
#include "nettomo/rng.hpp"
#include "nettomo/routing.hpp"
#include "nettomo/sim.hpp"
#include "nettomo/sweep.hpp"
#include "nettomo/verify.hpp"

using namespace nettomo;

namespace {

int failures = 0;

void criterion(char const* name, double limit_s,
               std::function<std::pair<bool, std::string>()> const& body) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string detail;
  try {
    auto res = body();
    ok = res.first;
    detail = res.second;
  } catch (std::exception const& e) {
    detail = std::string("exception: ") + e.what();
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (dt > limit_s) {
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += "over the " + std::to_string(limit_s) + "s budget";
  }
  std::printf("[%s] %-32s %7.2fs  %s\n", ok ? "PASS" : "FAIL", name, dt, detail.c_str());
  if (!ok) ++failures;
}

std::string str(char const* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

std::pair<bool, std::string> suite(VerifyReport const& report) {
  int passed = 0;
  std::string first_fail;
  for (auto const& c : report.checks) {
    if (c.pass)
      ++passed;
    else if (first_fail.empty())
      first_fail = "; first failure: " + c.name;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d/%zu checks%s", passed, report.checks.size(),
                first_fail.c_str());
  return {report.all_pass(), buf};
}

}  // namespace

int main() {
  std::string data_dir = NETTOMO_DATA_DIR;

  criterion("entangled-advantage-threshold", 1.0, [] {
    ProbeEnergy ref{100.0, 0.558, 2};
    double nstar = entangled_advantage_threshold(ref);
    bool in_window = nstar > 3.02 && nstar < 3.04;
    ProbeEnergy probe{3.1, 0.558, 2};
    bool dominates = true;
    for (double eta = 0.05; eta < 0.9501; eta += 0.05)
      dominates = dominates && fi_entangled(probe, eta) > fi_squeezed(probe, eta);
    return std::make_pair(in_window && dominates,
                          str("N* = %.6f; entangled wins across eta at N = 3.1", nstar));
  });

  criterion("quantum-vs-coherent-threshold", 1.0, [] {
    ProbeEnergy ref{100.0, 0.558, 1};
    double nstar = quantum_advantage_threshold(ref, 0.8, Impl::squeezed);
    bool in_window = nstar > 0.37 && nstar < 0.40;
    ProbeEnergy probe{0.45, 0.558, 1};
    bool beats = fi_squeezed(probe, 0.8) > fi_coherent(probe, 0.8);
    return std::make_pair(in_window && beats,
                          str("N* = %.6f at eta = 0.8; squeezed wins at N = 0.45", nstar));
  });

  criterion("entangled-split-fim-structure", 30.0, [] { return suite(verify_claim1()); });

  criterion("network-fim-closed-forms", 120.0, [] { return suite(verify_lemma()); });

  criterion("independent-split-dominance", 10.0, [] {
    GridSpec g{0.02, 1.0, 50};
    SweepResult res = sweep_grid(SweepMode::independent_split, 100.0, 0.558, g, g, true);
    bool ok = res.min_diff_det > 0.0 && res.min_diff_trinv > 0.0;
    return std::make_pair(
        ok, str("min det margin %.6g, min trace margin %.3e over 50x50", res.min_diff_det,
                res.min_diff_trinv));
  });

  criterion("shared-split-closed-forms", 30.0, [] { return suite(verify_appendix_a()); });

  criterion("probe-construction", 60.0, [&data_dir]() -> std::pair<bool, std::string> {
    Network net = load_network(data_dir + "/demo_net.json");
    std::vector<Walk> walks = find_probes(net);

    std::vector<std::vector<int>> want = {{1, 2, 1},       {1, 2, 3, 2, 1}, {5, 4, 3, 4, 5},
                                          {5, 4, 5},       {1, 2, 4, 2, 1}, {1, 5}};
    if (walks.size() != want.size()) return {false, "demo walk count mismatch"};
    for (std::size_t i = 0; i < want.size(); ++i)
      if (walks[i].vertices != want[i]) return {false, "demo walk " + std::to_string(i + 1)};

    SubgraphCover cover = group_cover(walks, net);
    std::vector<std::set<std::string>> want_edges = {{"e1", "e2", "e5"}, {"e3", "e4"}, {"e6"}};
    if (cover.subgraphs.size() != want_edges.size()) return {false, "demo cover size"};
    for (std::size_t s = 0; s < want_edges.size(); ++s) {
      std::set<std::string> got;
      for (int e : cover.subgraphs[s].edges) got.insert(net.edges[static_cast<std::size_t>(e)].id);
      if (got != want_edges[s]) return {false, "demo cover grouping"};
    }
    if (static_cast<int>(cover.subgraphs.size()) != cover_bound(net))
      return {false, "demo cover bound not attained"};
    if (!verify_cover(cover, net).empty()) return {false, "demo cover invalid"};

    int graphs = 200;
    for (int rep = 0; rep < graphs; ++rep) {
      Network random_net = random_connected_network(derive_key(12345, rep));
      if (!validate_network(random_net).empty()) return {false, "random network invalid"};
      std::vector<Walk> random_walks = find_probes(random_net);
      std::vector<Probe> plan;
      for (auto const& w : random_walks) {
        if (!validate_walk(w, random_net).empty()) return {false, "random walk invalid"};
        Probe p;
        p.walk = w;
        plan.push_back(std::move(p));
      }
      SubgraphCover random_cover = group_cover(random_walks, random_net);
      if (!verify_cover(random_cover, random_net).empty()) return {false, "random cover invalid"};
      if (static_cast<int>(random_cover.subgraphs.size()) != cover_bound(random_net))
        return {false, "random cover bound not attained"};
      if (!is_identifiable(measurement_matrix(plan, random_net)))
        return {false, "random plan not identifiable"};
    }
    return {true, str("demo net exact; %.0f random graphs covered and identifiable",
                      static_cast<double>(graphs))};
  });

  criterion("condition-checkpoint", 1.0, [] {
    SufficientConditionReport r = sufficient_condition_checks(6.0, 0.558, {0.13, 0.13});
    bool values = std::abs(r.f - 1.2438843920098341) < 1e-9 &&
                  std::abs(r.g - 1.2404222863895762) < 1e-9 &&
                  std::abs(r.spade - 0.5010741332935861) < 1e-9;
    bool ordering = r.f > r.g && r.spade <= 0.55;
    return std::make_pair(values && ordering,
                          str("f = %.12f > g, spade = %.4f <= 0.55", r.f, r.spade));
  });

  criterion("estimator-reaches-crb", 300.0, [&data_dir] {
    Network net = load_network(data_dir + "/demo_net.json");
    std::vector<Probe> plan = load_plan(data_dir + "/demo_plan.json", net);
    SimulationSummary s = run_simulation(plan, net, 1000, 42, true);
    double max_bias = 0.0;
    for (double b : s.bias) max_bias = std::max(max_bias, std::abs(b));
    bool ok = s.converged_trials == s.trials && max_bias < 0.01 &&
              std::abs(s.ratio - 1.0) <= 0.15;
    return std::make_pair(
        ok, str("max |bias| = %.2e, variance/CRB = %.4f over 1000 trials", max_bias, s.ratio));
  });

  if (failures == 0) {
    std::printf("all 9 criteria passed\n");
    return 0;
  }
  std::printf("%d of 9 criteria FAILED\n", failures);
  return 1;
}
