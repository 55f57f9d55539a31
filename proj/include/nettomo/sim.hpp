#pragma once

#include <cstdint>

#include "nettomo/fim.hpp"
#include "nettomo/routing.hpp"

namespace nettomo {

// One Monte-Carlo trial's worth of probe outcomes: per probe, c blocks of
// length t. Regeneration from (seed, trial) is bit-identical, independent of
// evaluation order, via counter-based per-(trial, probe, copy) substreams.
struct ObservationSet {
  std::vector<std::vector<Eigen::VectorXd>> blocks;  // [probe][copy]
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
};

ObservationSet sample_observations_one(std::vector<Probe> const& probes, Network const& net,
                                       std::uint64_t seed, std::uint64_t trial);
std::vector<ObservationSet> sample_observations(std::vector<Probe> const& probes,
                                                Network const& net, int trials,
                                                std::uint64_t seed);

// Sum of Gaussian log-densities over all blocks at the given edge
// transmissivities. Gradient (optional) via the chain rule
// d eta_P / d eta_i = A[P][i] * eta_P / eta_i.
double log_likelihood(Eigen::VectorXd const& eta, ObservationSet const& obs,
                      std::vector<Probe> const& probes, Network const& net,
                      Eigen::VectorXd* grad = nullptr);

struct MleOptions {
  int max_iters = 500;
  // sup-norm of the gradient of the mean negative log-likelihood per block,
  // in logit coordinates
  double grad_tol = 1e-8;
  Eigen::VectorXd init;               // empty -> moment-based initialization
  SubgraphCover const* cover = nullptr;  // when set, estimate per subgraph
};

struct EstimationResult {
  Eigen::VectorXd eta_hat;
  double log_lik = 0.0;
  int iterations = 0;
  bool converged = false;
  bool decoupled = false;
};

// Quasi-Newton (BFGS) ascent in logit coordinates, so the (0,1) box needs no
// projection. Converged means the gradient tolerance was met or the objective
// stopped improving at machine resolution. With a cover, the likelihood
// factorizes over edge-disjoint subgraphs and each block is optimized
// independently.
EstimationResult mle_estimate(ObservationSet const& obs, std::vector<Probe> const& probes,
                              Network const& net, MleOptions const& options = {});

// Moment-based starting point: invert the mean observation of the shortest
// probe covering each edge, spread as a geometric mean along its walk,
// clamped to [0.05, 0.99].
Eigen::VectorXd moment_init(ObservationSet const& obs, std::vector<Probe> const& probes,
                            Network const& net);

struct SimulationSummary {
  std::vector<double> true_eta;
  std::vector<double> mean_estimate;
  std::vector<double> bias;
  std::vector<double> variance;        // per edge, sample variance
  double empirical_total_variance = 0.0;
  double crb_trace = 0.0;              // Tr(I^-1) of the plan
  std::vector<double> crb_diag;
  double ratio = 0.0;                  // empirical total variance / CRB trace
  int trials = 0;
  int converged_trials = 0;
  std::uint64_t seed = 0;
};

// trials x (sample -> estimate), then moment summaries against the CRB.
// parallel=true runs trials under OpenMP; results are identical either way.
SimulationSummary run_simulation(std::vector<Probe> const& probes, Network const& net, int trials,
                                 std::uint64_t seed, bool parallel = true);

}  // namespace nettomo
