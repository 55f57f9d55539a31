// Wall-clock comparison of the OpenMP kernels against their serial twins.
// The outputs are asserted identical; the table is the point.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "nettomo/json_io.hpp"
#include "nettomo/sim.hpp"
#include "nettomo/sweep.hpp"

using namespace nettomo;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

void row(char const* name, double serial_s, double parallel_s, bool identical) {
  std::printf("%-28s %10.3fs %12.3fs %9.2fx   %s\n", name, serial_s, parallel_s,
              serial_s / parallel_s, identical ? "identical" : "DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  int grid_steps = argc > 1 ? std::atoi(argv[1]) : 200;
  int trials = argc > 2 ? std::atoi(argv[2]) : 64;

  std::printf("%-28s %11s %13s %10s\n", "kernel", "serial", "parallel", "speedup");

  GridSpec g{0.02, 1.0, grid_steps};
  {
    auto t0 = clock_type::now();
    SweepResult a = sweep_grid(SweepMode::independent_split, 100.0, 0.558, g, g, false);
    double ts = seconds_since(t0);
    t0 = clock_type::now();
    SweepResult b = sweep_grid(SweepMode::independent_split, 100.0, 0.558, g, g, true);
    double tp = seconds_since(t0);
    row("sweep independent-split", ts, tp, sweep_csv(a) == sweep_csv(b));
  }
  {
    auto t0 = clock_type::now();
    SweepResult a = sweep_grid(SweepMode::shared_split, 100.0, 0.558, g, g, false);
    double ts = seconds_since(t0);
    t0 = clock_type::now();
    SweepResult b = sweep_grid(SweepMode::shared_split, 100.0, 0.558, g, g, true);
    double tp = seconds_since(t0);
    row("sweep shared-split", ts, tp, sweep_csv(a) == sweep_csv(b));
  }
  {
    Network net = load_network(std::string(NETTOMO_DATA_DIR) + "/demo_net.json");
    std::vector<Probe> plan = load_plan(std::string(NETTOMO_DATA_DIR) + "/demo_plan.json", net);
    auto t0 = clock_type::now();
    SimulationSummary a = run_simulation(plan, net, trials, 42, false);
    double ts = seconds_since(t0);
    t0 = clock_type::now();
    SimulationSummary b = run_simulation(plan, net, trials, 42, true);
    double tp = seconds_since(t0);
    bool same = a.mean_estimate == b.mean_estimate && a.variance == b.variance;
    row("simulate+estimate batch", ts, tp, same);
  }
  return 0;
}
