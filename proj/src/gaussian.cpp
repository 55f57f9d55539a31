#include "nettomo/gaussian.hpp"

#include <cmath>
#include <stdexcept>

namespace nettomo {

namespace {

constexpr double kDomainGuard = 1e-12;

void require_eta_open(double eta) {
  if (!(eta > 0.0)) throw std::domain_error("degenerate-transmissivity: eta must be > 0");
  if (eta > 1.0) throw std::domain_error("transmissivity-out-of-range: eta > 1");
}

void require_nonsingular(double one_minus_ceta) {
  if (one_minus_ceta < kDomainGuard)
    throw std::domain_error("near-singular-covariance: 1 - c*eta below guard");
}

}  // namespace

double c_n(double Na, int n) {
  if (Na < 0) throw std::domain_error("probe-energy-invalid: Na < 0");
  if (n < 1) throw std::domain_error("probe-block-size-invalid: n < 1");
  if (Na == 0) return 0.0;
  double x = static_cast<double>(n) * Na;
  return 2.0 * std::sqrt(x) / (std::sqrt(x + 1.0) + std::sqrt(x));
}

double squeeze_db_from_Na(double Na) {
  if (Na < 0) throw std::domain_error("probe-energy-invalid: Na < 0");
  double r = std::asinh(std::sqrt(Na));
  return 10.0 * std::log10(std::exp(2.0 * r));
}

double Na_from_squeeze_db(double db) {
  double r = 0.5 * db / (10.0 * std::log10(std::exp(1.0)));
  double s = std::sinh(r);
  return s * s;
}

GaussianModel model_coherent(ProbeEnergy const& e) {
  int n = e.n;
  double amp2 = e.N + e.Na;
  GaussianModel m;
  m.dim = n;
  m.n_params = 1;
  m.mean = [n, amp2](Eigen::VectorXd const& eta) {
    return Eigen::VectorXd::Constant(n, std::sqrt(amp2 * eta[0])).eval();
  };
  m.cov = [n](Eigen::VectorXd const&) {
    return (0.25 * Eigen::MatrixXd::Identity(n, n)).eval();
  };
  m.dmean = [n, amp2](Eigen::VectorXd const& eta) {
    return Eigen::MatrixXd::Constant(n, 1, 0.5 * std::sqrt(amp2 / eta[0])).eval();
  };
  m.dcov = [n](Eigen::VectorXd const&) {
    return std::vector<Eigen::MatrixXd>{Eigen::MatrixXd::Zero(n, n)};
  };
  return m;
}

GaussianModel model_squeezed(ProbeEnergy const& e) {
  int n = e.n;
  double N = e.N;
  double c1 = c_n(e.Na, 1);
  GaussianModel m;
  m.dim = n;
  m.n_params = 1;
  m.mean = [n, N](Eigen::VectorXd const& eta) {
    return Eigen::VectorXd::Constant(n, std::sqrt(N * eta[0])).eval();
  };
  m.cov = [n, c1](Eigen::VectorXd const& eta) {
    return (0.25 * (1.0 - c1 * eta[0]) * Eigen::MatrixXd::Identity(n, n)).eval();
  };
  m.dmean = [n, N](Eigen::VectorXd const& eta) {
    return Eigen::MatrixXd::Constant(n, 1, 0.5 * std::sqrt(N / eta[0])).eval();
  };
  m.dcov = [n, c1](Eigen::VectorXd const&) {
    return std::vector<Eigen::MatrixXd>{(-0.25 * c1 * Eigen::MatrixXd::Identity(n, n)).eval()};
  };
  return m;
}

GaussianModel model_entangled(ProbeEnergy const& e) {
  int n = e.n;
  double N = e.N;
  double cn = c_n(e.Na, n);
  Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(n, n);
  GaussianModel m;
  m.dim = n;
  m.n_params = 1;
  m.mean = [n, N](Eigen::VectorXd const& eta) {
    return Eigen::VectorXd::Constant(n, std::sqrt(N * eta[0])).eval();
  };
  m.cov = [n, cn, ones](Eigen::VectorXd const& eta) {
    return (0.25 * Eigen::MatrixXd::Identity(n, n) - (eta[0] * cn / (4.0 * n)) * ones).eval();
  };
  m.dmean = [n, N](Eigen::VectorXd const& eta) {
    return Eigen::MatrixXd::Constant(n, 1, 0.5 * std::sqrt(N / eta[0])).eval();
  };
  m.dcov = [n, cn, ones](Eigen::VectorXd const&) {
    return std::vector<Eigen::MatrixXd>{(-(cn / (4.0 * n)) * ones).eval()};
  };
  return m;
}

GaussianModel model_squeezed_split(double N, double Na, int n) {
  double c1 = c_n(Na, 1);
  GaussianModel m;
  m.dim = n;
  m.n_params = n;
  m.mean = [N](Eigen::VectorXd const& eta) {
    return (std::sqrt(N) * eta.array().sqrt()).matrix().eval();
  };
  m.cov = [c1](Eigen::VectorXd const& eta) {
    return (0.25 * (1.0 - c1 * eta.array())).matrix().asDiagonal().toDenseMatrix().eval();
  };
  return m;
}

GaussianModel model_entangled_split(double N, double Na, int n) {
  double cn = c_n(Na, n);
  GaussianModel m;
  m.dim = n;
  m.n_params = n;
  m.mean = [N](Eigen::VectorXd const& eta) {
    return (std::sqrt(N) * eta.array().sqrt()).matrix().eval();
  };
  m.cov = [cn, n](Eigen::VectorXd const& eta) {
    Eigen::VectorXd root = eta.array().sqrt();
    return (0.25 * Eigen::MatrixXd::Identity(n, n) - (cn / (4.0 * n)) * root * root.transpose())
        .eval();
  };
  return m;
}

namespace {

// channel map (eta1, eta2) -> (eta1*eta2, eta2) composed with a split model
GaussianModel shared_chain(GaussianModel inner) {
  GaussianModel m;
  m.dim = inner.dim;
  m.n_params = 2;
  auto lift = [](Eigen::VectorXd const& eta) {
    Eigen::VectorXd t(2);
    t << eta[0] * eta[1], eta[1];
    return t;
  };
  m.mean = [inner, lift](Eigen::VectorXd const& eta) { return inner.mean(lift(eta)); };
  m.cov = [inner, lift](Eigen::VectorXd const& eta) { return inner.cov(lift(eta)); };
  return m;
}

}  // namespace

GaussianModel model_squeezed_shared(double N, double Na) {
  return shared_chain(model_squeezed_split(N, Na, 2));
}

GaussianModel model_entangled_shared(double N, double Na) {
  return shared_chain(model_entangled_split(N, Na, 2));
}

Eigen::MatrixXd gaussian_fim(GaussianModel const& model, Eigen::VectorXd const& eta, Deriv mode,
                             double h_scale) {
  int p = model.n_params;
  if (eta.size() != p) throw std::invalid_argument("parameter-size-mismatch");

  Eigen::MatrixXd sigma = model.cov(eta);
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("covariance-singular: Sigma not positive definite");
  Eigen::MatrixXd sigma_inv =
      llt.solve(Eigen::MatrixXd::Identity(model.dim, model.dim));

  Eigen::MatrixXd dmu(model.dim, p);
  std::vector<Eigen::MatrixXd> dsig;
  if (mode == Deriv::analytic) {
    if (!model.dmean || !model.dcov)
      throw std::runtime_error("analytic-derivatives-unavailable");
    dmu = model.dmean(eta);
    dsig = model.dcov(eta);
  } else {
    dsig.reserve(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) {
      double h = h_scale * std::max(eta[i], 1e-3);
      Eigen::VectorXd up = eta, dn = eta;
      up[i] += h;
      dn[i] -= h;
      dmu.col(i) = (model.mean(up) - model.mean(dn)) / (2.0 * h);
      dsig.push_back(((model.cov(up) - model.cov(dn)) / (2.0 * h)).eval());
    }
  }

  Eigen::MatrixXd fim(p, p);
  std::vector<Eigen::MatrixXd> w(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) w[static_cast<std::size_t>(i)] = sigma_inv * dsig[static_cast<std::size_t>(i)];
  for (int i = 0; i < p; ++i)
    for (int j = i; j < p; ++j) {
      double value = dmu.col(i).dot(sigma_inv * dmu.col(j)) +
                     0.5 * (w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)]).trace();
      fim(i, j) = value;
      fim(j, i) = value;
    }
  return fim;
}

double fi_coherent(ProbeEnergy const& e, double eta) {
  require_eta_open(eta);
  return (e.N + e.Na) * static_cast<double>(e.n) / eta;
}

double fi_squeezed(ProbeEnergy const& e, double eta) {
  require_eta_open(eta);
  double c1 = c_n(e.Na, 1);
  double d = 1.0 - c1 * eta;
  require_nonsingular(d);
  return static_cast<double>(e.n) * (e.N / (eta * d) + c1 * c1 / (2.0 * d * d));
}

double fi_entangled(ProbeEnergy const& e, double eta) {
  require_eta_open(eta);
  double cn = c_n(e.Na, e.n);
  double d = 1.0 - cn * eta;
  require_nonsingular(d);
  return static_cast<double>(e.n) * e.N / (eta * d) + cn * cn / (2.0 * d * d);
}

double channel_fi(Impl impl, ProbeEnergy const& e, double eta) {
  switch (impl) {
    case Impl::coherent: return fi_coherent(e, eta);
    case Impl::squeezed: return fi_squeezed(e, eta);
    case Impl::entangled: return fi_entangled(e, eta);
  }
  throw std::logic_error("unknown impl");
}

double entangled_advantage_threshold(ProbeEnergy const& e) {
  if (e.n < 2) throw std::domain_error("threshold-undefined: needs n >= 2");
  if (!(e.Na > 0)) throw std::domain_error("threshold-undefined: needs Na > 0");
  double c1 = c_n(e.Na, 1);
  double cn = c_n(e.Na, e.n);
  return c1 * c1 / (2.0 * (cn - c1));
}

double quantum_advantage_threshold(ProbeEnergy const& e, double eta, Impl which) {
  require_eta_open(eta);
  if (!(e.Na > 0)) throw std::domain_error("threshold-undefined: needs Na > 0");
  double c = 0.0;
  if (which == Impl::squeezed)
    c = c_n(e.Na, 1);
  else if (which == Impl::entangled)
    c = c_n(e.Na, e.n);
  else
    throw std::invalid_argument("threshold-undefined: compare squeezed or entangled against coherent");
  return (1.0 / (c * eta) - 1.0) * e.Na;
}

Eigen::MatrixXd sherman_morrison_inverse(Eigen::VectorXd const& diag, Eigen::VectorXd const& u,
                                         double scale) {
  if (diag.size() != u.size()) throw std::invalid_argument("size-mismatch");
  for (int i = 0; i < diag.size(); ++i)
    if (diag[i] == 0.0) throw std::runtime_error("matrix-singular: zero diagonal entry");
  Eigen::VectorXd dinv_u = u.array() / diag.array();
  double denom = 1.0 + scale * u.dot(dinv_u);
  if (std::abs(denom) < kDomainGuard) throw std::runtime_error("matrix-singular: rank-one denominator");
  Eigen::MatrixXd out = diag.cwiseInverse().asDiagonal();
  out.noalias() -= (scale / denom) * dinv_u * dinv_u.transpose();
  return out;
}

}  // namespace nettomo
