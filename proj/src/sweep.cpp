#include "nettomo/sweep.hpp"

#include <cstdio>
#include <stdexcept>

namespace nettomo {

GridSpec parse_grid(std::string const& text) {
  GridSpec g;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &g.lo, &g.hi, &g.steps, &extra) != 3)
    throw std::invalid_argument("grid-spec-invalid: expected A:B:STEPS, got '" + text + "'");
  if (g.steps < 1) throw std::invalid_argument("grid-spec-invalid: steps must be >= 1");
  if (g.hi < g.lo) throw std::invalid_argument("grid-spec-invalid: B < A");
  return g;
}

std::vector<double> grid_points(GridSpec const& g) {
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(g.steps));
  if (g.steps == 1) {
    pts.push_back(g.lo);
    return pts;
  }
  double step = (g.hi - g.lo) / static_cast<double>(g.steps - 1);
  for (int i = 0; i < g.steps; ++i) pts.push_back(g.lo + step * i);
  return pts;
}

SweepMode sweep_mode_from_string(std::string const& s) {
  if (s == "independent-split") return SweepMode::independent_split;
  if (s == "shared-split") return SweepMode::shared_split;
  throw std::invalid_argument("sweep-mode-invalid: " + s);
}

std::string to_string(SweepMode m) {
  return m == SweepMode::independent_split ? "independent-split" : "shared-split";
}

SweepResult sweep_grid(SweepMode mode, double N, double Na, GridSpec const& g1,
                       GridSpec const& g2, bool parallel) {
  std::vector<double> p1 = grid_points(g1);
  std::vector<double> p2 = grid_points(g2);
  SweepResult result;
  result.mode = mode;
  result.rows.resize(p1.size() * p2.size());

  int total = static_cast<int>(result.rows.size());
#pragma omp parallel for schedule(static) if (parallel)
  for (int flat = 0; flat < total; ++flat) {
    std::size_t i = static_cast<std::size_t>(flat) / p2.size();
    std::size_t j = static_cast<std::size_t>(flat) % p2.size();
    double eta1 = p1[i], eta2 = p2[j];
    SplitComparison cmp = mode == SweepMode::independent_split
                              ? split_comparison_independent(N, Na, {eta1, eta2})
                              : split_comparison_shared(N, Na, eta1, eta2);
    SweepRow& row = result.rows[static_cast<std::size_t>(flat)];
    row.eta1 = eta1;
    row.eta2 = eta2;
    row.det_s = cmp.det_squeezed;
    row.det_e = cmp.det_entangled;
    row.trinv_s = cmp.trace_inv_squeezed;
    row.trinv_e = cmp.trace_inv_entangled;
    row.diff_det = row.det_s - row.det_e;
    row.diff_trinv = row.trinv_e - row.trinv_s;
  }

  result.min_diff_det = result.max_diff_det = result.rows.front().diff_det;
  result.min_diff_trinv = result.max_diff_trinv = result.rows.front().diff_trinv;
  for (SweepRow const& row : result.rows) {
    result.min_diff_det = std::min(result.min_diff_det, row.diff_det);
    result.max_diff_det = std::max(result.max_diff_det, row.diff_det);
    result.min_diff_trinv = std::min(result.min_diff_trinv, row.diff_trinv);
    result.max_diff_trinv = std::max(result.max_diff_trinv, row.diff_trinv);
  }
  return result;
}

std::string sweep_csv(SweepResult const& result) {
  std::string out = "eta1,eta2,det_s,det_e,trinv_s,trinv_e,diff_det,diff_trinv\n";
  char line[256];
  for (SweepRow const& r : result.rows) {
    std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", r.eta1,
                  r.eta2, r.det_s, r.det_e, r.trinv_s, r.trinv_e, r.diff_det, r.diff_trinv);
    out += line;
  }
  return out;
}

std::string sweep_summary(SweepResult const& result) {
  char buf[256];
  std::string out;
  std::snprintf(buf, sizeof buf, "mode=%s rows=%zu\n", to_string(result.mode).c_str(),
                result.rows.size());
  out += buf;
  std::snprintf(buf, sizeof buf, "diff_det   (det_s - det_e):   min %.12g  max %.12g\n",
                result.min_diff_det, result.max_diff_det);
  out += buf;
  std::snprintf(buf, sizeof buf, "diff_trinv (trinv_e - trinv_s): min %.12g  max %.12g\n",
                result.min_diff_trinv, result.max_diff_trinv);
  out += buf;
  return out;
}

}  // namespace nettomo
