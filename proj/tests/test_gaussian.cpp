#include <doctest.h>

#include <cmath>

#include "nettomo/gaussian.hpp"
#include "nettomo/rng.hpp"

using namespace nettomo;

TEST_CASE("correlation coefficient c_n") {
  CHECK(c_n(0.558, 1) == doctest::Approx(0.7487938223835899).epsilon(1e-14));
  CHECK(c_n(0.558, 2) == doctest::Approx(0.8414059282821722).epsilon(1e-14));
  CHECK(c_n(0.0, 7) == 0.0);

  // grows with pooled ancilla energy, saturates below 1
  double prev = 0.0;
  for (int n = 1; n <= 4096; n *= 4) {
    double value = c_n(0.25, n);
    CHECK(value > prev);
    CHECK(value < 1.0);
    prev = value;
  }

  CHECK_THROWS_AS(c_n(-0.1, 2), std::domain_error);
  CHECK_THROWS_AS(c_n(0.5, 0), std::domain_error);
}

TEST_CASE("0.558 ancilla photons is the 6 dB squeezing point") {
  CHECK(squeeze_db_from_Na(0.558) == doctest::Approx(5.999696847129897).epsilon(1e-12));
  for (double na : {0.1, 0.558, 2.0})
    CHECK(Na_from_squeeze_db(squeeze_db_from_Na(na)) == doctest::Approx(na).epsilon(1e-12));
}

TEST_CASE("coherent model mean amplitude") {
  ProbeEnergy e{100.0, 0.558, 1};
  Eigen::VectorXd mu = model_coherent(e).mean(Eigen::VectorXd::Constant(1, 0.64));
  CHECK(mu[0] == doctest::Approx(8.022288950168774).epsilon(1e-14));
}

TEST_CASE("channel information closed forms match the generic FIM") {
  for (int n : {1, 2, 5}) {
    ProbeEnergy e{60.0, 0.558, n};
    for (double eta : {0.15, 0.5, 0.92}) {
      Eigen::VectorXd point = Eigen::VectorXd::Constant(1, eta);
      CHECK(fi_coherent(e, eta) ==
            doctest::Approx(gaussian_fim(model_coherent(e), point, Deriv::analytic)(0, 0))
                .epsilon(1e-12));
      CHECK(fi_squeezed(e, eta) ==
            doctest::Approx(gaussian_fim(model_squeezed(e), point, Deriv::analytic)(0, 0))
                .epsilon(1e-12));
      CHECK(fi_entangled(e, eta) ==
            doctest::Approx(gaussian_fim(model_entangled(e), point, Deriv::analytic)(0, 0))
                .epsilon(1e-12));
      // the finite-difference path is the model-independent oracle
      CHECK(fi_entangled(e, eta) ==
            doctest::Approx(gaussian_fim(model_entangled(e), point, Deriv::finite_difference)(0, 0))
                .epsilon(1e-6));
    }
  }
}

TEST_CASE("single-pulse entanglement reduces to squeezing, zero ancilla to coherent") {
  for (double eta : {0.1, 0.5, 0.9}) {
    ProbeEnergy one{50.0, 0.558, 1};
    CHECK(fi_entangled(one, eta) == doctest::Approx(fi_squeezed(one, eta)).epsilon(1e-14));
    ProbeEnergy zero{50.0, 0.0, 3};
    CHECK(fi_squeezed(zero, eta) == doctest::Approx(fi_coherent(zero, eta)).epsilon(1e-14));
  }
}

TEST_CASE("energy thresholds") {
  ProbeEnergy e{0.0, 0.558, 2};
  CHECK(entangled_advantage_threshold(e) == doctest::Approx(3.0270998753328775).epsilon(1e-12));

  CHECK(quantum_advantage_threshold(e, 0.8, Impl::squeezed) ==
        doctest::Approx(0.3734980694948719).epsilon(1e-12));
  CHECK(quantum_advantage_threshold(e, 1.0, Impl::entangled) ==
        doctest::Approx(0.10517574103527146).epsilon(1e-12));

  SUBCASE("above the entangled-advantage threshold entanglement wins everywhere") {
    ProbeEnergy probe{3.1, 0.558, 2};
    for (double eta = 0.05; eta < 0.96; eta += 0.05)
      CHECK(fi_entangled(probe, eta) > fi_squeezed(probe, eta));
  }
  SUBCASE("above the quantum-advantage threshold squeezing beats the coherent probe") {
    ProbeEnergy probe{0.45, 0.558, 1};
    CHECK(fi_squeezed(probe, 0.8) > fi_coherent(probe, 0.8));
  }

  ProbeEnergy single{1.0, 0.558, 1};
  CHECK_THROWS_AS(entangled_advantage_threshold(single), std::domain_error);
  ProbeEnergy bare{1.0, 0.0, 2};
  CHECK_THROWS_AS(entangled_advantage_threshold(bare), std::domain_error);
  CHECK_THROWS_AS(quantum_advantage_threshold(e, 0.8, Impl::coherent), std::invalid_argument);
}

TEST_CASE("transmissivity domain guards") {
  ProbeEnergy e{10.0, 0.558, 2};
  CHECK_THROWS_WITH_AS(fi_squeezed(e, 0.0), doctest::Contains("degenerate-transmissivity"),
                       std::domain_error);
  CHECK_THROWS_WITH_AS(fi_entangled(e, 1.2), doctest::Contains("transmissivity-out-of-range"),
                       std::domain_error);
  CHECK(fi_squeezed(e, 1.0) > 0.0);  // eta = 1 itself is fine
}

TEST_CASE("generic FIM guards its inputs") {
  ProbeEnergy e{10.0, 0.558, 2};
  GaussianModel m = model_entangled(e);
  CHECK_THROWS_WITH_AS(gaussian_fim(m, Eigen::VectorXd::Constant(2, 0.5), Deriv::analytic),
                       doctest::Contains("parameter-size-mismatch"), std::invalid_argument);

  GaussianModel flat;
  flat.dim = 2;
  flat.n_params = 1;
  flat.mean = [](Eigen::VectorXd const& eta) { return Eigen::VectorXd::Constant(2, eta[0]); };
  flat.cov = [](Eigen::VectorXd const&) { return Eigen::MatrixXd::Zero(2, 2).eval(); };
  CHECK_THROWS_WITH_AS(
      gaussian_fim(flat, Eigen::VectorXd::Constant(1, 0.5), Deriv::finite_difference),
      doctest::Contains("covariance-singular"), std::runtime_error);

  GaussianModel no_deriv = model_squeezed_split(10.0, 0.558, 2);
  CHECK_THROWS_WITH_AS(
      gaussian_fim(no_deriv, Eigen::VectorXd::Constant(2, 0.5), Deriv::analytic),
      doctest::Contains("analytic-derivatives-unavailable"), std::runtime_error);
}

TEST_CASE("rank-one diagonal update inverse") {
  SeqRng rng(derive_key(11, 22));
  for (int rep = 0; rep < 10; ++rep) {
    int n = static_cast<int>(rng.integer(1, 6));
    Eigen::VectorXd d(n), u(n);
    for (int i = 0; i < n; ++i) {
      d[i] = rng.uniform(0.5, 2.0);
      u[i] = rng.uniform(-1.0, 1.0);
    }
    double s = rng.uniform(-0.2, 0.5);
    Eigen::MatrixXd direct = (d.asDiagonal().toDenseMatrix() + s * u * u.transpose()).inverse();
    Eigen::MatrixXd closed = sherman_morrison_inverse(d, u, s);
    CHECK((closed - direct).cwiseAbs().maxCoeff() < 1e-12 * direct.cwiseAbs().maxCoeff() + 1e-14);
  }

  CHECK_THROWS_WITH_AS(
      sherman_morrison_inverse(Eigen::VectorXd::Zero(2), Eigen::VectorXd::Ones(2), 0.1),
      doctest::Contains("matrix-singular"), std::runtime_error);
  // u^T D^-1 u = 2, scale -1/2 makes the update exactly singular
  CHECK_THROWS_WITH_AS(
      sherman_morrison_inverse(Eigen::VectorXd::Ones(2), Eigen::VectorXd::Ones(2), -0.5),
      doctest::Contains("matrix-singular"), std::runtime_error);
}
