#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "nettomo/network.hpp"

namespace nettomo {

// Energy bookkeeping for one probe: classical photons N, quantum photons Na,
// block size n (pulses entangled together; 1 for coherent/squeezed).
struct ProbeEnergy {
  double N = 100.0;
  double Na = 0.558;
  int n = 1;
};

// c_n = 1 - e^{-2s} = 2 sqrt(n Na)/(sqrt(n Na + 1) + sqrt(n Na))
double c_n(double Na, int n);

// squeezing strength in dB: 10 log10(e^{2r}) with sinh^2(r) = Na
double squeeze_db_from_Na(double Na);
double Na_from_squeeze_db(double db);

// Gaussian observation model: eta (parameter vector) -> mean and covariance of
// the homodyne outcome. Vacuum quadrature variance is 1/4 throughout.
struct GaussianModel {
  int dim = 0;       // observation dimension
  int n_params = 1;  // parameter count
  std::function<Eigen::VectorXd(Eigen::VectorXd const&)> mean;
  std::function<Eigen::MatrixXd(Eigen::VectorXd const&)> cov;
  // analytic derivatives, optional (finite differences otherwise)
  std::function<Eigen::MatrixXd(Eigen::VectorXd const&)> dmean;              // dim x n_params
  std::function<std::vector<Eigen::MatrixXd>(Eigen::VectorXd const&)> dcov;  // one per param
};

// Single-channel models, n pulses, parameter = scalar eta:
//   coherent:  mu = sqrt((N+Na) eta) 1,  Sigma = (1/4) I
//   squeezed:  mu = sqrt(N eta) 1,       Sigma = (1/4)(1 - c_1 eta) I
//   entangled: mu = sqrt(N eta) 1,       Sigma = (1/4) I - (eta c_n / 4n) 1 1^T
GaussianModel model_coherent(ProbeEnergy const& e);
GaussianModel model_squeezed(ProbeEnergy const& e);
GaussianModel model_entangled(ProbeEnergy const& e);

// Split configurations over n channels with transmissivities eta_1..eta_n
// (parameters = the channel transmissivities):
//   squeezed_split:  n independent single-pulse squeezed probes
//   entangled_split: one n-pulse entangled block, pulse i through channel i
GaussianModel model_squeezed_split(double N, double Na, int n);
GaussianModel model_entangled_split(double N, double Na, int n);

// Two-channel chain sharing a factor: channel transmissivities (eta1*eta2, eta2),
// parameters = (eta1, eta2).
GaussianModel model_squeezed_shared(double N, double Na);
GaussianModel model_entangled_shared(double N, double Na);

enum class Deriv { analytic, finite_difference };

// Fisher information of a Gaussian model:
//   I_ij = dmu^T/deta_i Sigma^-1 dmu/deta_j
//          + (1/2) Tr(Sigma^-1 dSigma/deta_i Sigma^-1 dSigma/deta_j)
// finite_difference uses central steps h_i = h_scale * max(eta_i, 1e-3) and is
// the brute-force oracle every closed form is verified against.
Eigen::MatrixXd gaussian_fim(GaussianModel const& model, Eigen::VectorXd const& eta,
                             Deriv mode = Deriv::analytic, double h_scale = 1e-6);

// Channel Fisher informations, closed forms:
//   I_c = (N+Na) n / eta
//   I_s = n ( N/(eta(1-c1 eta)) + c1^2/(2(1-c1 eta)^2) )
//   I_e = n N/(eta(1-cn eta)) + cn^2/(2(1-cn eta)^2)
double fi_coherent(ProbeEnergy const& e, double eta);
double fi_squeezed(ProbeEnergy const& e, double eta);
double fi_entangled(ProbeEnergy const& e, double eta);
double channel_fi(Impl impl, ProbeEnergy const& e, double eta);

// N above this guarantees I_e > I_s for every eta in (0,1]:
//   N* = c1^2 / (2 (cn - c1)),  requires n >= 2 and Na > 0
double entangled_advantage_threshold(ProbeEnergy const& e);

// N above this guarantees the quantum probe beats coherent at this eta:
//   N* = (1/(c eta) - 1) Na, c = c1 (squeezed) or cn (entangled)
double quantum_advantage_threshold(ProbeEnergy const& e, double eta, Impl which);

// (Diag(d) + scale u u^T)^-1 in closed form, O(n^2)
Eigen::MatrixXd sherman_morrison_inverse(Eigen::VectorXd const& diag, Eigen::VectorXd const& u,
                                         double scale);

}  // namespace nettomo
