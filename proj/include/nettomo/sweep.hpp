#pragma once

#include <string>

#include "nettomo/fim.hpp"

namespace nettomo {

struct GridSpec {
  double lo = 0.02;
  double hi = 1.0;
  int steps = 50;
};

// "A:B:STEPS" -> GridSpec; throws on malformed input
GridSpec parse_grid(std::string const& text);
std::vector<double> grid_points(GridSpec const& g);

enum class SweepMode { independent_split, shared_split };
SweepMode sweep_mode_from_string(std::string const& s);
std::string to_string(SweepMode m);

struct SweepRow {
  double eta1 = 0.0, eta2 = 0.0;
  double det_s = 0.0, det_e = 0.0;
  double trinv_s = 0.0, trinv_e = 0.0;
  double diff_det = 0.0;    // det_s - det_e
  double diff_trinv = 0.0;  // trinv_e - trinv_s
};

struct SweepResult {
  SweepMode mode = SweepMode::independent_split;
  std::vector<SweepRow> rows;  // eta1-major, then eta2
  double min_diff_det = 0.0, max_diff_det = 0.0;
  double min_diff_trinv = 0.0, max_diff_trinv = 0.0;
};

// Grid of two-channel comparisons. parallel=true distributes grid points over
// OpenMP threads; each point writes its own row, so output is identical to the
// serial path.
SweepResult sweep_grid(SweepMode mode, double N, double Na, GridSpec const& g1,
                       GridSpec const& g2, bool parallel = true);

// CSV with header eta1,eta2,det_s,det_e,trinv_s,trinv_e,diff_det,diff_trinv
// at 12 significant digits.
std::string sweep_csv(SweepResult const& result);

// "min/max diff" sign summary lines for terminal output
std::string sweep_summary(SweepResult const& result);

}  // namespace nettomo
