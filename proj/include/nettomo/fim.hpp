#pragma once

#include "nettomo/gaussian.hpp"
#include "nettomo/network.hpp"

namespace nettomo {

struct ProbeChannel {
  std::string probe_id;
  double eta_P = 0.0;  // walk transmissivity
  double fi = 0.0;     // channel FI of one block
  int copies = 1;
};

// Network-level FIM report. The matrix is assembled as
//   I = D_eta^-1 A^T D_P A D_eta^-1,  D_P = diag(c_i eta_Pi^2 I_Pi)
// det/trace_inv are dense values; when A is square and identifiable the
// closed forms
//   det(I)     = (prod eta_i^-2) det(A)^2 prod(c_i eta_Pi^2 I_Pi)
//   Tr(I^-1)   = sum_i eta_i^2 sum_j (A^-1)_ij^2 / (c_j eta_Pj^2 I_Pj)
// are also evaluated and their relative discrepancies reported.
struct FimReport {
  Eigen::MatrixXd fim;
  bool identifiable = false;
  bool lemma_applicable = false;
  double det = 0.0;
  double trace_inv = 0.0;
  double det_closed = 0.0;
  double trace_inv_closed = 0.0;
  double det_rel_discrepancy = 0.0;
  double trace_inv_rel_discrepancy = 0.0;
  std::vector<ProbeChannel> per_probe;
  MeasurementMatrix matrix;
};

FimReport network_fim(std::vector<Probe> const& probes, Network const& net);

// Lemma closed forms off a report; throw "lemma-requires-square-A" otherwise.
double det_fim(FimReport const& r);
double trace_inv_fim(FimReport const& r);

// Improvement of plan b over plan a sharing the same walks:
//   det ratio   det(I_b)/det(I_a) = prod (c_i' I_i')/(c_i I_i)
//   trace delta Tr(I_b^-1) - Tr(I_a^-1)
// The weighted-sum form of the trace delta is evaluated as a cross-check.
struct PlanComparison {
  double det_ratio = 0.0;
  double trace_inv_delta = 0.0;
  double det_ratio_closed = 0.0;
  double trace_delta_weighted = 0.0;
  FimReport a, b;
};
PlanComparison compare_plans(std::vector<Probe> const& plan_a, std::vector<Probe> const& plan_b,
                             Network const& net);

// n-channel squeezed-vs-entangled comparison.
//   independent: channels eta_1..eta_n, entangled FIM = beta diag(1/eta_i) + gamma u u^T
//   shared: two channels (eta1*eta2, eta2)
struct SplitComparison {
  int n = 0;
  double N = 0.0, Na = 0.0;
  double det_squeezed = 0.0, det_entangled = 0.0;
  double trace_inv_squeezed = 0.0, trace_inv_entangled = 0.0;
  double beta = 0.0, gamma = 0.0;  // diag + rank-one scalars (independent case only)
  double S_eta = 0.0, Q_eta = 0.0;
};
SplitComparison split_comparison_independent(double N, double Na, std::vector<double> const& eta);
SplitComparison split_comparison_shared(double N, double Na, double eta1, double eta2);

// Diagnostics for the sufficient conditions behind the split comparison:
// f > g implies the det ordering, c1 S^2 > cn Q implies the trace ordering.
// One-way implications; reported raw.
struct SufficientConditionReport {
  int n = 0;
  double S_eta = 0.0, Q_eta = 0.0;
  double f = 0.0, g = 0.0, spade = 0.0;
  bool det_condition = false;    // f > g
  bool trace_condition = false;  // c1 S^2 > cn Q
};
SufficientConditionReport sufficient_condition_checks(double N, double Na,
                                                      std::vector<double> const& eta);

// Full concatenated observation of a plan (every copy of every probe), as one
// Gaussian model over the edge transmissivities. Finite-difference FIMs of
// this model are the brute-force oracle for network_fim.
GaussianModel concatenated_model(std::vector<Probe> const& probes, Network const& net);

}  // namespace nettomo
