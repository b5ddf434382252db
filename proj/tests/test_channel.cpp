#include "check_util.hpp"

#include "random_states.hpp"

using namespace rgc;


TEST_CASE("symplectic helpers") {
  std::mt19937_64 rng(7);
  const Eigen::Matrix4d S = random_symplectic(rng), J = symplectic_form<double>();
  CHECK((S * J * S.transpose() - J).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(min_eig_plus_isigma(Eigen::Matrix4d::Identity())) < 1e-14);
  CHECK(min_eig_plus_isigma(0.5 * Eigen::Matrix4d::Identity()) < 0.0);
}

TEST_CASE("input states") {
  const auto st = squeezed_thermal_state(0.7, 0.3);
  CHECK_NOTHROW(check_state(st, "test"));
  CHECK(st.cov(0, 0) == Rel(1.6 * std::cosh(1.4)));
  CHECK_THROWS_AS(squeezed_thermal_state(0.1, -0.5), ParameterError);
  GaussianState<double> bad;
  bad.cov *= 0.5;
  CHECK_THROWS_AS(check_state(bad, "bad"), InconsistencyError);
}

TEST_CASE("identity and pure-loss channels") {
  ChannelMatrices<double> id;
  CHECK(std::abs(complete_positivity_margin(id)) < 1e-14);
  const auto out = apply_two_mode(id, squeezed_thermal_state(0.4, 0.0));
  CHECK((out.cov - squeezed_thermal_state(0.4, 0.0).cov).isZero(1e-14));

  const double tau = 0.8;
  ChannelMatrices<double> loss;
  loss.M = std::sqrt(tau) * Eigen::Matrix4d::Identity();
  loss.N = (1 - tau) * Eigen::Matrix4d::Identity();
  CHECK(complete_positivity_margin(loss) > -1e-14);
  const auto c = canonical_form(reduce_single_mode(loss));
  CHECK(c.tau == Rel(tau));
  CHECK(std::abs(c.nbar) < 1e-12);
  CHECK(c.rank == 2);
  CHECK(c.noise() == Rel(0.2));
  // too little noise is not completely positive
  loss.N *= 0.5;
  CHECK(complete_positivity_margin(loss) < -1e-3);
}

TEST_CASE("thermal-loss canonical form") {
  const double tau = 0.6, nb = 0.7;
  SingleModeChannel<double> ch{std::sqrt(tau) * Eigen::Matrix2d::Identity(),
                               (1 - tau) * (2 * nb + 1) * Eigen::Matrix2d::Identity()};
  const auto c = canonical_form(ch);
  CHECK(c.nbar == Rel(nb).epsilon(1e-12));
  // additive-noise channel, τ = 1
  SingleModeChannel<double> add{Eigen::Matrix2d::Identity(), 0.3 * Eigen::Matrix2d::Identity()};
  CHECK(canonical_form(add).nbar == Rel(0.3));
  SingleModeChannel<double> rk1{Eigen::Matrix2d::Identity(), Eigen::Vector2d(1.0, 0.0).asDiagonal()};
  CHECK(canonical_form(rk1).rank == 1);
  SingleModeChannel<double> wild{2.0 * Eigen::Matrix2d::Identity(), Eigen::Matrix2d::Identity()};
  CHECK_THROWS_AS(canonical_form(wild), InconsistencyError);
}

TEST_CASE("entropy function and capacities") {
  CHECK(entropy_g(1.0) == 0.0);
  CHECK(entropy_g(3.0) == Rel(2.0).epsilon(1e-14));
  CHECK(entropy_g(10.0) == Rel(3.762211396014729276).epsilon(1e-14));
  CHECK(entropy_g(3.0, std::exp(1.0)) == Rel(2.0 * std::log(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(entropy_g(0.5), DomainError);

  const SingleModeCanonical loss{0.8, 0.0, 2};
  const double x = 2.6, g26 = 0.5 * (x + 1) * std::log2(0.5 * (x + 1)) - 0.5 * (x - 1) * std::log2(0.5 * (x - 1));
  CHECK(classical_capacity_lb(loss, 1.0) == Rel(g26).epsilon(1e-13));
  CHECK(quantum_capacity_lb(loss) == Rel(2.0).epsilon(1e-13));
  CHECK(std::isinf(quantum_capacity_lb(SingleModeCanonical{1.0, 0.0, 2})));
  // thermal noise: second argument 2n̄(1−τ) = 0.2 is clamped, so only the first term remains
  const SingleModeCanonical th{0.8, 0.5, 2};
  CHECK(classical_capacity_lb(th, 1.0) == Rel(entropy_g(2.8)).epsilon(1e-14));
  const SingleModeCanonical hot{0.5, 3.0, 2};  // 2n̄(1−τ) = 3
  CHECK(classical_capacity_lb(hot, 4.0) == Rel(entropy_g(8.0) - entropy_g(3.0)).epsilon(1e-14));
  CHECK(quantum_capacity_lb(th) < quantum_capacity_lb(loss));
  CHECK(quantum_capacity_lb(SingleModeCanonical{0.4, 0.0, 2}) == 0.0);
}

TEST_CASE("approximate channel drops the vacuum noise") {
  ChannelMatrices<double> ch;
  ch.M = 0.9 * Eigen::Matrix4d::Identity();
  ch.N = (1 - 0.81) * Eigen::Matrix4d::Identity();
  const auto in = squeezed_thermal_state(0.5, 0.2);
  CHECK((apply_two_mode(ch, in).cov - apply_two_mode_approx(ch.M, in).cov).isZero(1e-14));
}
