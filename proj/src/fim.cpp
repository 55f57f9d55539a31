#include "nettomo/fim.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nettomo/intlinalg.hpp"

namespace nettomo {

namespace {

double rel_diff(double a, double b) {
  double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return 0.0;
  return std::abs(a - b) / scale;
}

void require_eta(double eta, char const* what) {
  if (!(eta > 0.0) || eta > 1.0) throw std::domain_error(std::string(what) + ": eta out of (0,1]");
}

}  // namespace

FimReport network_fim(std::vector<Probe> const& probes, Network const& net) {
  FimReport r;
  r.matrix = measurement_matrix(probes, net);
  std::size_t n_edges = net.edges.size();
  std::size_t n_probes = probes.size();

  Eigen::VectorXd eta(n_edges);
  for (std::size_t i = 0; i < n_edges; ++i) {
    if (!net.edges[i].eta)
      throw std::invalid_argument("missing-transmissivity: edge " + net.edges[i].id);
    require_eta(*net.edges[i].eta, "network_fim");
    eta[static_cast<Eigen::Index>(i)] = *net.edges[i].eta;
  }

  Eigen::MatrixXd a(n_probes, n_edges);
  for (std::size_t i = 0; i < n_probes; ++i)
    for (std::size_t j = 0; j < n_edges; ++j)
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          static_cast<double>(r.matrix.entries[i][j]);

  Eigen::VectorXd dp(n_probes);
  for (std::size_t i = 0; i < n_probes; ++i) {
    Probe const& p = probes[i];
    auto errs = validate_probe(p, net);
    if (!errs.empty()) throw std::invalid_argument("probe " + std::to_string(i + 1) + ": " + errs.front());
    double eta_p = probe_transmissivity(p, net);
    double fi = channel_fi(p.impl, ProbeEnergy{p.N, p.Na, p.t}, eta_p);
    r.per_probe.push_back({r.matrix.row_ids[i], eta_p, fi, p.c});
    dp[static_cast<Eigen::Index>(i)] = static_cast<double>(p.c) * eta_p * eta_p * fi;
  }

  Eigen::VectorXd eta_inv = eta.cwiseInverse();
  Eigen::MatrixXd fim = eta_inv.asDiagonal() * a.transpose() * dp.asDiagonal() * a *
                        eta_inv.asDiagonal();
  r.fim = 0.5 * (fim + fim.transpose());  // scrub asymmetry noise

  r.identifiable = is_identifiable(r.matrix);
  if (!r.identifiable) {
    r.det = 0.0;
    r.trace_inv = std::numeric_limits<double>::infinity();
    r.lemma_applicable = false;
    return r;
  }

  r.det = r.fim.determinant();
  r.trace_inv = r.fim.inverse().trace();

  r.lemma_applicable = (n_probes == n_edges);
  if (r.lemma_applicable) {
    bigint det_a = exact_det(r.matrix.entries);
    double det_a2 = static_cast<double>(det_a) * static_cast<double>(det_a);
    double det_closed = det_a2;
    for (std::size_t i = 0; i < n_edges; ++i)
      det_closed /= eta[static_cast<Eigen::Index>(i)] * eta[static_cast<Eigen::Index>(i)];
    for (std::size_t i = 0; i < n_probes; ++i) det_closed *= dp[static_cast<Eigen::Index>(i)];
    r.det_closed = det_closed;

    Eigen::MatrixXd a_inv = a.inverse();
    double trace = 0.0;
    for (std::size_t i = 0; i < n_edges; ++i) {
      double inner = 0.0;
      for (std::size_t j = 0; j < n_probes; ++j) {
        double w = a_inv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        inner += w * w / dp[static_cast<Eigen::Index>(j)];
      }
      trace += eta[static_cast<Eigen::Index>(i)] * eta[static_cast<Eigen::Index>(i)] * inner;
    }
    r.trace_inv_closed = trace;

    r.det_rel_discrepancy = rel_diff(r.det, r.det_closed);
    r.trace_inv_rel_discrepancy = rel_diff(r.trace_inv, r.trace_inv_closed);
  }
  return r;
}

double det_fim(FimReport const& r) {
  if (!r.lemma_applicable) throw std::runtime_error("lemma-requires-square-A");
  return r.det_closed;
}

double trace_inv_fim(FimReport const& r) {
  if (!r.lemma_applicable) throw std::runtime_error("lemma-requires-square-A");
  return r.trace_inv_closed;
}

PlanComparison compare_plans(std::vector<Probe> const& plan_a, std::vector<Probe> const& plan_b,
                             Network const& net) {
  if (plan_a.size() != plan_b.size()) throw std::invalid_argument("plans-not-comparable: sizes differ");
  for (std::size_t i = 0; i < plan_a.size(); ++i)
    if (!(plan_a[i].walk == plan_b[i].walk))
      throw std::invalid_argument("plans-not-comparable: walk " + std::to_string(i + 1) + " differs");

  PlanComparison cmp;
  cmp.a = network_fim(plan_a, net);
  cmp.b = network_fim(plan_b, net);
  cmp.det_ratio = cmp.b.det / cmp.a.det;
  cmp.trace_inv_delta = cmp.b.trace_inv - cmp.a.trace_inv;

  cmp.det_ratio_closed = 1.0;
  for (std::size_t i = 0; i < plan_a.size(); ++i)
    cmp.det_ratio_closed *= (static_cast<double>(cmp.b.per_probe[i].copies) * cmp.b.per_probe[i].fi) /
                            (static_cast<double>(cmp.a.per_probe[i].copies) * cmp.a.per_probe[i].fi);

  cmp.trace_delta_weighted = std::numeric_limits<double>::quiet_NaN();
  if (cmp.a.lemma_applicable && cmp.b.lemma_applicable) {
    std::size_t n = plan_a.size();
    Eigen::MatrixXd a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            static_cast<double>(cmp.a.matrix.entries[i][j]);
    Eigen::MatrixXd a_inv = a.inverse();
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double eta_i = *net.edges[i].eta;
      for (std::size_t j = 0; j < n; ++j) {
        double w = a_inv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        double eta_pj = cmp.a.per_probe[j].eta_P;  // walks shared, so eta_P too
        double after = static_cast<double>(cmp.b.per_probe[j].copies) * cmp.b.per_probe[j].fi;
        double before = static_cast<double>(cmp.a.per_probe[j].copies) * cmp.a.per_probe[j].fi;
        delta += eta_i * eta_i * w * w / (eta_pj * eta_pj) * (1.0 / after - 1.0 / before);
      }
    }
    cmp.trace_delta_weighted = delta;
  }
  return cmp;
}

SplitComparison split_comparison_independent(double N, double Na, std::vector<double> const& eta) {
  int n = static_cast<int>(eta.size());
  if (n < 1) throw std::invalid_argument("split-domain-violation: empty eta");
  for (double e : eta) require_eta(e, "split_comparison_independent");

  double c1 = c_n(Na, 1);
  double cn = c_n(Na, n);
  double s = 0.0, q = 0.0, prod = 1.0;
  for (double e : eta) {
    s += e;
    q += e * e;
    prod *= e;
  }
  double a = static_cast<double>(n) - cn * s;
  if (!(a > 0)) throw std::domain_error("split-domain-violation: n - c_n S must be positive");

  SplitComparison out;
  out.n = n;
  out.N = N;
  out.Na = Na;
  out.S_eta = s;
  out.Q_eta = q;

  out.det_squeezed = 1.0;
  out.trace_inv_squeezed = 0.0;
  for (double e : eta) {
    double d = 1.0 - c1 * e;
    out.det_squeezed *= N / (e * d) + c1 * c1 / (2.0 * d * d);
    out.trace_inv_squeezed += 2.0 * e * d * d / (2.0 * N * d + c1 * c1 * e);
  }

  double nn = static_cast<double>(n);
  out.beta = N + cn * cn * s / (4.0 * nn * a);
  out.gamma = cn * N / a + cn * cn * (nn + cn * s) / (4.0 * nn * a * a);

  double spade = (2.0 * N * nn * a + cn * cn * s) / (4.0 * N * nn * a + cn * cn * s);
  out.det_entangled = (2.0 * nn / a) * std::pow(N, nn) / prod *
                      std::pow(1.0 + cn * cn * s / (4.0 * N * nn * a), nn) * spade;

  out.trace_inv_entangled =
      s / out.beta - out.gamma * q / (out.beta * (out.beta + out.gamma * s));
  return out;
}

SplitComparison split_comparison_shared(double N, double Na, double eta1, double eta2) {
  require_eta(eta1, "split_comparison_shared");
  require_eta(eta2, "split_comparison_shared");
  double c1 = c_n(Na, 1);
  double c2 = c_n(Na, 2);

  SplitComparison out;
  out.n = 2;
  out.N = N;
  out.Na = Na;
  double t1 = eta1 * eta2, t2 = eta2;
  out.S_eta = t1 + t2;
  out.Q_eta = t1 * t1 + t2 * t2;
  out.beta = std::numeric_limits<double>::quiet_NaN();
  out.gamma = std::numeric_limits<double>::quiet_NaN();

  double d1 = 1.0 - c1 * t1;
  double d2 = 1.0 - c1 * t2;
  out.det_squeezed = (1.0 / (4.0 * eta1)) * ((2.0 * N * d1 + c1 * c1 * t1) / (d1 * d1)) *
                     ((2.0 * N * d2 + c1 * c1 * t2) / (d2 * d2));
  out.trace_inv_squeezed =
      (2.0 / eta2) * (eta1 * d1 * d1 / (2.0 * N * d1 + c1 * c1 * t1) +
                      (eta1 * eta1 + eta2 * eta2) * d2 * d2 / (2.0 * N * d2 + c1 * c1 * t2));

  double a2 = 2.0 - c2 * eta2 * (1.0 + eta1);
  if (!(a2 > 0)) throw std::domain_error("split-domain-violation: 2 - c_2 eta2 (1 + eta1) must be positive");
  double onep = 1.0 + eta1;
  out.det_entangled = (32.0 * N * N * a2 * a2 + 12.0 * N * c2 * c2 * eta2 * onep * a2 +
                       std::pow(c2, 4) * eta2 * eta2 * onep * onep) /
                      (16.0 * eta1 * a2 * a2 * a2);
  out.trace_inv_entangled =
      (2.0 * a2 / (onep * eta2)) *
      (4.0 * eta1 * (onep * onep + eta2 * eta2) / (16.0 * N - c2 * eta2 * (8.0 * N - c2) * onep) +
       eta2 * eta2 * a2 / (8.0 * N - c2 * eta2 * (4.0 * N - c2) * onep));
  return out;
}

SufficientConditionReport sufficient_condition_checks(double N, double Na,
                                                      std::vector<double> const& eta) {
  int n = static_cast<int>(eta.size());
  if (n < 1) throw std::invalid_argument("split-domain-violation: empty eta");
  double c1 = c_n(Na, 1);
  double cn = c_n(Na, n);
  double s = 0.0, q = 0.0;
  for (double e : eta) {
    s += e;
    q += e * e;
  }
  double nn = static_cast<double>(n);
  double a1 = nn - c1 * s;
  double an = nn - cn * s;
  if (!(a1 > 0) || !(an > 0))
    throw std::domain_error("split-domain-violation: n - c S must be positive");

  SufficientConditionReport r;
  r.n = n;
  r.S_eta = s;
  r.Q_eta = q;
  r.f = std::pow(nn / a1, nn) * std::pow(1.0 + c1 * c1 * s / (2.0 * N * a1), nn);
  r.g = (1.1 * nn / an) * std::pow(1.0 + cn * cn * s / (4.0 * N * nn * an), nn);
  r.spade = (2.0 * N * nn * an + cn * cn * s) / (4.0 * N * nn * an + cn * cn * s);
  r.det_condition = r.f > r.g;
  r.trace_condition = c1 * s * s > cn * q;
  return r;
}

GaussianModel concatenated_model(std::vector<Probe> const& probes, Network const& net) {
  MeasurementMatrix mm = measurement_matrix(probes, net);
  std::size_t n_edges = net.edges.size();
  int dim = 0;
  for (Probe const& p : probes) {
    auto errs = validate_probe(p, net);
    if (!errs.empty()) throw std::invalid_argument(errs.front());
    dim += p.t * p.c;
  }

  // copy what the lambdas need, so the model owns its data
  struct Part {
    double n_classical = 0.0;  // N (quantum probes) or N + Na (coherent)
    double c_coeff = 0.0;      // 0 coherent, c_1 squeezed, c_t entangled
    bool correlated = false;   // rank-one covariance term present
    int t = 1, c = 1;
    std::vector<long long> row;
  };
  std::vector<Part> parts;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    Probe const& p = probes[i];
    Part part;
    part.t = p.t;
    part.c = p.c;
    part.row = mm.entries[i];
    switch (p.impl) {
      case Impl::coherent:
        part.n_classical = p.N + p.Na;
        part.c_coeff = 0.0;
        part.correlated = false;
        break;
      case Impl::squeezed:
        part.n_classical = p.N;
        part.c_coeff = c_n(p.Na, 1);
        part.correlated = false;
        break;
      case Impl::entangled:
        part.n_classical = p.N;
        part.c_coeff = c_n(p.Na, p.t);
        part.correlated = true;
        break;
    }
    parts.push_back(std::move(part));
  }

  auto eta_p_of = [parts, n_edges](Eigen::VectorXd const& eta, std::size_t i) {
    double prod = 1.0;
    for (std::size_t j = 0; j < n_edges; ++j)
      for (long long k = 0; k < parts[i].row[j]; ++k) prod *= eta[static_cast<Eigen::Index>(j)];
    return prod;
  };

  GaussianModel m;
  m.dim = dim;
  m.n_params = static_cast<int>(n_edges);
  m.mean = [parts, dim, eta_p_of](Eigen::VectorXd const& eta) {
    Eigen::VectorXd mu(dim);
    int at = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      double amp = std::sqrt(parts[i].n_classical * eta_p_of(eta, i));
      for (int copy = 0; copy < parts[i].c; ++copy)
        for (int k = 0; k < parts[i].t; ++k) mu[at++] = amp;
    }
    return mu;
  };
  m.cov = [parts, dim, eta_p_of](Eigen::VectorXd const& eta) {
    Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(dim, dim);
    int at = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      double eta_p = eta_p_of(eta, i);
      int t = parts[i].t;
      for (int copy = 0; copy < parts[i].c; ++copy) {
        if (parts[i].correlated) {
          sigma.block(at, at, t, t).setConstant(-eta_p * parts[i].c_coeff / (4.0 * t));
          sigma.block(at, at, t, t).diagonal().array() += 0.25;
        } else {
          sigma.block(at, at, t, t).diagonal().setConstant(
              0.25 * (1.0 - parts[i].c_coeff * eta_p));
        }
        at += t;
      }
    }
    return sigma;
  };
  return m;
}

}  // namespace nettomo
