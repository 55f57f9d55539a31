#include "nettomo/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nettomo/rng.hpp"

namespace nettomo {

namespace {

struct BlockShape {
  double n_classical;  // N, or N + Na for coherent
  double c_coeff;      // 0 coherent, c_1 squeezed, c_t entangled
  bool correlated;
};

BlockShape block_shape(Probe const& p) {
  switch (p.impl) {
    case Impl::coherent: return {p.N + p.Na, 0.0, false};
    case Impl::squeezed: return {p.N, c_n(p.Na, 1), false};
    case Impl::entangled: return {p.N, c_n(p.Na, p.t), true};
  }
  throw std::logic_error("unknown impl");
}

}  // namespace

ObservationSet sample_observations_one(std::vector<Probe> const& probes, Network const& net,
                                       std::uint64_t seed, std::uint64_t trial) {
  ObservationSet out;
  out.seed = seed;
  out.trial = trial;
  out.blocks.resize(probes.size());
  std::uint64_t trial_key = derive_key(seed, trial);
  for (std::size_t pi = 0; pi < probes.size(); ++pi) {
    Probe const& p = probes[pi];
    auto errs = validate_probe(p, net);
    if (!errs.empty()) throw std::invalid_argument(errs.front());
    double eta_p = probe_transmissivity(p, net);
    BlockShape shape = block_shape(p);
    double mu = std::sqrt(shape.n_classical * eta_p);
    std::uint64_t probe_key = derive_key(trial_key, pi);
    out.blocks[pi].reserve(static_cast<std::size_t>(p.c));
    for (int copy = 0; copy < p.c; ++copy) {
      std::uint64_t copy_key = derive_key(probe_key, static_cast<std::uint64_t>(copy));
      Eigen::VectorXd x(p.t);
      if (!shape.correlated) {
        double sd = 0.5 * std::sqrt(1.0 - shape.c_coeff * eta_p);
        for (int k = 0; k < p.t; ++k)
          x[k] = mu + sd * normal(copy_key, static_cast<std::uint64_t>(k));
      } else {
        // Sigma = (1/4) I - (eta c_t / 4t) 1 1^T: eigenvalue (1 - c_t eta)/4
        // along 1/sqrt(t), 1/4 elsewhere -> O(t) structured draw
        double t = static_cast<double>(p.t);
        Eigen::VectorXd z(p.t);
        for (int k = 0; k < p.t; ++k) z[k] = normal(copy_key, static_cast<std::uint64_t>(k));
        double along = z.sum() / std::sqrt(t);
        double lam = std::sqrt(1.0 - shape.c_coeff * eta_p);
        x = Eigen::VectorXd::Constant(p.t, mu) + 0.5 * z +
            0.5 * (lam - 1.0) * (along / std::sqrt(t)) * Eigen::VectorXd::Ones(p.t);
      }
      out.blocks[pi].push_back(std::move(x));
    }
  }
  return out;
}

std::vector<ObservationSet> sample_observations(std::vector<Probe> const& probes,
                                                Network const& net, int trials,
                                                std::uint64_t seed) {
  std::vector<ObservationSet> out;
  out.reserve(static_cast<std::size_t>(trials));
  for (int tr = 0; tr < trials; ++tr)
    out.push_back(sample_observations_one(probes, net, seed, static_cast<std::uint64_t>(tr)));
  return out;
}

double log_likelihood(Eigen::VectorXd const& eta, ObservationSet const& obs,
                      std::vector<Probe> const& probes, Network const& net,
                      Eigen::VectorXd* grad) {
  std::size_t n_edges = net.edges.size();
  if (static_cast<std::size_t>(eta.size()) != n_edges)
    throw std::invalid_argument("parameter-size-mismatch");
  for (Eigen::Index i = 0; i < eta.size(); ++i)
    if (!(eta[i] > 0.0) || eta[i] > 1.0)
      throw std::domain_error("parameter-out-of-domain: eta[" + std::to_string(i) + "]");
  if (obs.blocks.size() != probes.size())
    throw std::invalid_argument("observations do not match the plan");

  if (grad) *grad = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_edges));
  double total = 0.0;
  constexpr double kLog2Pi = 1.8378770664093453;  // log(2 pi)

  for (std::size_t pi = 0; pi < probes.size(); ++pi) {
    Probe const& p = probes[pi];
    auto multiset = walk_multiset(p.walk);
    double eta_p = 1.0;
    for (auto const& [ei, count] : multiset)
      eta_p *= std::pow(eta[static_cast<Eigen::Index>(ei)], static_cast<double>(count));
    BlockShape shape = block_shape(p);
    double mu = std::sqrt(shape.n_classical * eta_p);
    double dmu = 0.5 * std::sqrt(shape.n_classical / eta_p);  // d mu / d eta_P

    double dl_deta_p = 0.0;  // accumulated over this probe's blocks
    if (!shape.correlated) {
      double var = 0.25 * (1.0 - shape.c_coeff * eta_p);
      double dvar = -0.25 * shape.c_coeff;
      for (Eigen::VectorXd const& x : obs.blocks[pi]) {
        for (Eigen::Index k = 0; k < x.size(); ++k) {
          double r = x[k] - mu;
          total += -0.5 * kLog2Pi - 0.5 * std::log(var) - 0.5 * r * r / var;
          dl_deta_p += r / var * dmu + (r * r / (2.0 * var * var) - 0.5 / var) * dvar;
        }
      }
    } else {
      double t = static_cast<double>(p.t);
      double d = 1.0 - shape.c_coeff * eta_p;
      double kappa = 4.0 * shape.c_coeff * eta_p / (t * d);  // Sigma^-1 = 4I + kappa 1 1^T
      double logdet = t * std::log(0.25) + std::log(d);
      // dSigma/deta_P = -(c/(4t)) 1 1^T; all contractions reduce to scalars
      double dkap_from = shape.c_coeff / (4.0 * t);
      for (Eigen::VectorXd const& x : obs.blocks[pi]) {
        Eigen::VectorXd r = x.array() - mu;
        double rr = r.squaredNorm();
        double s1 = r.sum();
        double quad = 4.0 * rr + kappa * s1 * s1;
        total += -0.5 * t * kLog2Pi - 0.5 * logdet - 0.5 * quad;
        double ones_sir = s1 * (4.0 + kappa * t);  // 1^T Sigma^-1 r
        double mean_term = dmu * ones_sir;
        double cov_term = 0.5 * (-dkap_from * ones_sir * ones_sir +
                                 dkap_from * (4.0 * t + kappa * t * t));
        dl_deta_p += mean_term + cov_term;
      }
    }
    if (grad) {
      for (auto const& [ei, count] : multiset) {
        Eigen::Index j = static_cast<Eigen::Index>(ei);
        (*grad)[j] += dl_deta_p * static_cast<double>(count) * eta_p / eta[j];
      }
    }
  }
  return total;
}

Eigen::VectorXd moment_init(ObservationSet const& obs, std::vector<Probe> const& probes,
                            Network const& net) {
  std::size_t n_edges = net.edges.size();
  Eigen::VectorXd init = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n_edges), 0.5);
  for (std::size_t ei = 0; ei < n_edges; ++ei) {
    int best_probe = -1;
    long long best_len = 0;
    for (std::size_t pi = 0; pi < probes.size(); ++pi) {
      auto ms = walk_multiset(probes[pi].walk);
      if (!ms.count(static_cast<int>(ei))) continue;
      long long len = 0;
      for (auto const& [e, cnt] : ms) len += cnt;
      if (best_probe < 0 || len < best_len) {
        best_probe = static_cast<int>(pi);
        best_len = len;
      }
    }
    if (best_probe < 0) continue;  // edge not covered; keep the neutral start
    Probe const& p = probes[static_cast<std::size_t>(best_probe)];
    BlockShape shape = block_shape(p);
    double mean = 0.0;
    long long count = 0;
    for (Eigen::VectorXd const& x : obs.blocks[static_cast<std::size_t>(best_probe)]) {
      mean += x.sum();
      count += x.size();
    }
    mean /= std::max<long long>(count, 1);
    double eta_p_hat = mean * mean / shape.n_classical * (mean > 0 ? 1.0 : 0.0);
    double spread = std::pow(std::max(eta_p_hat, 1e-12), 1.0 / static_cast<double>(best_len));
    init[static_cast<Eigen::Index>(ei)] = std::clamp(spread, 0.05, 0.99);
  }
  return init;
}

namespace {

double logit(double x) { return std::log(x / (1.0 - x)); }
double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// mean negative log-likelihood per block over a subset of edges (others
// fixed), in logit space. The per-block normalization keeps the value near
// O(1) so line-search decisions stay above the floating-point noise floor
// regardless of how many copies a plan carries.
struct Objective {
  ObservationSet const& obs;
  std::vector<Probe> const& probes;
  Network const& net;
  std::vector<int> const& edge_sel;  // indexes being optimized
  Eigen::VectorXd base_eta;          // full-length vector; selected entries overwritten
  double inv_blocks = 1.0;

  void set_scale() {
    double blocks = 0;
    for (Probe const& p : probes) blocks += p.c;
    inv_blocks = 1.0 / std::max(blocks, 1.0);
  }

  double eval(Eigen::VectorXd const& theta, Eigen::VectorXd* grad_out) {
    Eigen::VectorXd eta = base_eta;
    // clamp: far-out line-search probes must stay inside (0, 1) even when the
    // sigmoid itself under/overflows to an endpoint
    for (std::size_t k = 0; k < edge_sel.size(); ++k)
      eta[edge_sel[k]] =
          std::clamp(sigmoid(theta[static_cast<Eigen::Index>(k)]), 1e-12, 1.0 - 1e-12);
    Eigen::VectorXd full_grad;
    double loglik = log_likelihood(eta, obs, probes, net, grad_out ? &full_grad : nullptr);
    if (grad_out) {
      grad_out->resize(static_cast<Eigen::Index>(edge_sel.size()));
      for (std::size_t k = 0; k < edge_sel.size(); ++k) {
        double e = eta[edge_sel[k]];
        (*grad_out)[static_cast<Eigen::Index>(k)] =
            -full_grad[edge_sel[k]] * e * (1.0 - e) * inv_blocks;
      }
    }
    return -loglik * inv_blocks;
  }
};

struct BfgsOutcome {
  Eigen::VectorXd theta;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

BfgsOutcome bfgs_minimize(Objective& f, Eigen::VectorXd theta, int max_iters, double grad_tol) {
  Eigen::Index n = theta.size();
  Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd grad(n);
  double value = f.eval(theta, &grad);

  BfgsOutcome out;
  int iter = 0;
  int stagnant = 0;
  for (; iter < max_iters; ++iter) {
    if (grad.cwiseAbs().maxCoeff() < grad_tol) {
      out.converged = true;
      break;
    }
    Eigen::VectorXd dir = -(h_inv * grad);
    if (dir.dot(grad) >= 0) {  // lost positive-definiteness; reset
      h_inv.setIdentity();
      dir = -grad;
    }
    // Armijo backtracking
    double step = 1.0;
    double slope = grad.dot(dir);
    Eigen::VectorXd theta_new;
    Eigen::VectorXd grad_new(n);
    double value_new = value;
    bool accepted = false;
    for (int bt = 0; bt < 50; ++bt) {
      theta_new = theta + step * dir;
      value_new = f.eval(theta_new, &grad_new);
      if (std::isfinite(value_new) && value_new <= value + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // no descent possible at machine resolution

    // three consecutive improvements below machine resolution: the objective
    // is minimized as far as doubles allow, even if the gradient tolerance
    // was not quite reached
    if (value - value_new < 1e-12 * (1.0 + std::abs(value))) {
      if (++stagnant >= 3) {
        theta = theta_new;
        grad = grad_new;
        value = value_new;
        ++iter;
        out.converged = true;
        break;
      }
    } else {
      stagnant = 0;
    }

    Eigen::VectorXd s = theta_new - theta;
    Eigen::VectorXd y = grad_new - grad;
    double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
      Eigen::MatrixXd left = eye - s * y.transpose() / sy;
      h_inv = left * h_inv * left.transpose() + s * s.transpose() / sy;
    }
    theta = theta_new;
    grad = grad_new;
    value = value_new;
  }
  if (!out.converged) out.converged = grad.cwiseAbs().maxCoeff() < grad_tol;
  out.theta = theta;
  out.value = value;
  out.iterations = iter;
  return out;
}

}  // namespace

EstimationResult mle_estimate(ObservationSet const& obs, std::vector<Probe> const& probes,
                              Network const& net, MleOptions const& options) {
  std::size_t n_edges = net.edges.size();
  {
    MeasurementMatrix mm = measurement_matrix(probes, net);
    if (!is_identifiable(mm)) throw std::invalid_argument("plan-not-identifiable");
  }

  Eigen::VectorXd start = options.init.size() > 0 ? options.init : moment_init(obs, probes, net);
  if (static_cast<std::size_t>(start.size()) != n_edges)
    throw std::invalid_argument("init-size-mismatch");
  for (Eigen::Index i = 0; i < start.size(); ++i)
    start[i] = std::clamp(start[i], 1e-6, 1.0 - 1e-9);

  // blocks of edges to optimize independently
  std::vector<std::vector<int>> blocks;
  std::vector<std::vector<Probe>> block_probes;
  std::vector<std::vector<std::size_t>> block_probe_idx;
  if (options.cover) {
    for (Subgraph const& g : options.cover->subgraphs) {
      std::vector<int> edges(g.edges.begin(), g.edges.end());
      std::vector<Probe> sub;
      std::vector<std::size_t> idx;
      for (int pi : g.probe_idx) {
        sub.push_back(probes[static_cast<std::size_t>(pi)]);
        idx.push_back(static_cast<std::size_t>(pi));
      }
      blocks.push_back(std::move(edges));
      block_probes.push_back(std::move(sub));
      block_probe_idx.push_back(std::move(idx));
    }
  } else {
    std::vector<int> all_edges(n_edges);
    for (std::size_t i = 0; i < n_edges; ++i) all_edges[i] = static_cast<int>(i);
    blocks.push_back(std::move(all_edges));
    block_probes.push_back(probes);
    std::vector<std::size_t> idx(probes.size());
    for (std::size_t i = 0; i < probes.size(); ++i) idx[i] = i;
    block_probe_idx.push_back(std::move(idx));
  }

  EstimationResult result;
  result.eta_hat = start;
  result.decoupled = options.cover != nullptr;
  result.converged = true;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    ObservationSet sub_obs;
    sub_obs.seed = obs.seed;
    sub_obs.trial = obs.trial;
    for (std::size_t pi : block_probe_idx[b]) sub_obs.blocks.push_back(obs.blocks[pi]);

    Objective objective{sub_obs, block_probes[b], net, blocks[b], result.eta_hat, 1.0};
    objective.set_scale();
    Eigen::VectorXd theta(static_cast<Eigen::Index>(blocks[b].size()));
    for (std::size_t k = 0; k < blocks[b].size(); ++k)
      theta[static_cast<Eigen::Index>(k)] = logit(start[blocks[b][k]]);

    BfgsOutcome run = bfgs_minimize(objective, theta, options.max_iters, options.grad_tol);
    for (std::size_t k = 0; k < blocks[b].size(); ++k)
      result.eta_hat[blocks[b][k]] = sigmoid(run.theta[static_cast<Eigen::Index>(k)]);
    result.iterations = std::max(result.iterations, run.iterations);
    result.converged = result.converged && run.converged;
  }
  result.log_lik = log_likelihood(result.eta_hat, obs, probes, net);
  return result;
}

SimulationSummary run_simulation(std::vector<Probe> const& probes, Network const& net, int trials,
                                 std::uint64_t seed, bool parallel) {
  std::size_t n_edges = net.edges.size();
  SimulationSummary sum;
  sum.trials = trials;
  sum.seed = seed;
  for (Edge const& e : net.edges) {
    if (!e.eta) throw std::invalid_argument("missing-transmissivity: edge " + e.id);
    sum.true_eta.push_back(*e.eta);
  }

  FimReport fim = network_fim(probes, net);
  if (!fim.identifiable) throw std::invalid_argument("plan-not-identifiable");
  sum.crb_trace = fim.trace_inv;
  Eigen::MatrixXd crb = fim.fim.inverse();
  for (std::size_t i = 0; i < n_edges; ++i)
    sum.crb_diag.push_back(crb(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)));

  Eigen::MatrixXd estimates(trials, static_cast<Eigen::Index>(n_edges));
  std::vector<char> converged(static_cast<std::size_t>(trials), 0);

  // trials write disjoint rows, so the parallel and serial paths are
  // bit-identical; counter-based streams make the draws order-independent.
  // Exceptions may not cross the parallel region: collect and rethrow after.
  std::vector<std::string> errors(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int tr = 0; tr < trials; ++tr) {
    try {
      ObservationSet obs =
          sample_observations_one(probes, net, seed, static_cast<std::uint64_t>(tr));
      EstimationResult est = mle_estimate(obs, probes, net);
      estimates.row(tr) = est.eta_hat.transpose();
      converged[static_cast<std::size_t>(tr)] = est.converged ? 1 : 0;
    } catch (std::exception const& e) {
      errors[static_cast<std::size_t>(tr)] = e.what();
      estimates.row(tr).setZero();
    }
  }
  for (std::string const& e : errors)
    if (!e.empty()) throw std::runtime_error("trial-failed: " + e);

  sum.converged_trials = 0;
  for (char c : converged) sum.converged_trials += c;

  for (std::size_t i = 0; i < n_edges; ++i) {
    double mean = estimates.col(static_cast<Eigen::Index>(i)).mean();
    double var = (estimates.col(static_cast<Eigen::Index>(i)).array() - mean).square().sum() /
                 std::max(trials - 1, 1);
    sum.mean_estimate.push_back(mean);
    sum.bias.push_back(mean - sum.true_eta[i]);
    sum.variance.push_back(var);
    sum.empirical_total_variance += var;
  }
  sum.ratio = sum.empirical_total_variance / sum.crb_trace;
  return sum;
}

}  // namespace nettomo
