#pragma once

#include "rgc/channel.hpp"

namespace rgc {

struct NegativityResult {
  double value = 0.0;
  double min_pt_symplectic_eig = 1.0;
};

// Two-mode log-negativity. The partial transpose flips the momentum of mode
// II; the smallest symplectic eigenvalue comes from the excess σ − 1, which
// keeps states within ~1e−12 of the vacuum resolvable.
NegativityResult log_negativity(const Eigen::Matrix4d& sigma, double base = std::exp(1.0));

template <class Scalar>
NegativityResult log_negativity(const GaussianState<Scalar>& s, double base = std::exp(1.0)) {
  check_state(s, "log_negativity");
  return log_negativity(Eigen::Matrix4d(s.cov.template cast<double>()), base);
}

// Same quantity through the block invariant Δ̃ = det A + det B − 2 det C.
NegativityResult log_negativity_invariants(const Eigen::Matrix4d& sigma, double base = std::exp(1.0));

// Vacuum-output state assembled from the noise terms, without forming 1 + ε.
NegativityResult vacuum_output_negativity(double n_I, double n_II, cplx np, cplx nm,
                                          double base = std::exp(1.0));

template <class Scalar = double>
struct FidelityTerms {
  Scalar lambda, gamma, delta;
};

// Real form of the determinant invariants: det(1 + iΣσ) = √det(1 + ΣσΣσ).
template <class Scalar>
FidelityTerms<Scalar> fidelity_terms(const Mat4<Scalar>& sf, const Mat4<Scalar>& sd) {
  using std::sqrt;
  const Mat4<Scalar> S = symplectic_form<Scalar>(), I = Mat4<Scalar>::Identity();
  const Scalar lf = (I + S * sf * S * sf).determinant(), ld = (I + S * sd * S * sd).determinant();
  const Scalar lam = sqrt(lf > Scalar(0) ? lf : Scalar(0)) * sqrt(ld > Scalar(0) ? ld : Scalar(0));
  return {lam, (I - S * sf * S * sd).determinant(), (sf + sd).determinant()};
}

// 4/(A − √(A² − δ)), A = √λ + √γ, rationalized. Loses about half its digits
// when either state is pure (γ = δ there); evaluate at higher precision or use
// the pure-state form.
template <class Scalar>
Scalar uhlmann_fidelity_general(const Mat4<Scalar>& sf, const Mat4<Scalar>& sd) {
  using std::abs;
  using std::sqrt;
  const FidelityTerms<Scalar> t = fidelity_terms(sf, sd);
  if (double(t.gamma) < -1e-10 || !(double(t.delta) > 0))
    throw InconsistencyError("uhlmann_fidelity: negative determinant invariant");
  const Scalar A = sqrt(t.lambda) + sqrt(t.gamma > Scalar(0) ? t.gamma : Scalar(0));
  Scalar rad = A * A - t.delta;
  if (double(rad) < -1e-8 * double(t.delta))
    throw InconsistencyError("uhlmann_fidelity: negative radicand " + std::to_string(double(rad)));
  if (rad < Scalar(0)) rad = Scalar(0);
  return 4 * (A + sqrt(rad)) / t.delta;
}

// Uhlmann fidelity of two zero-mean two-mode Gaussian states; switches to
// 4/√δ when either state is pure (det σ = 1).
double uhlmann_fidelity(const Eigen::Matrix4d& sf, const Eigen::Matrix4d& sd);
double uhlmann_fidelity_pure(const Eigen::Matrix4d& sf, const Eigen::Matrix4d& sd);
bool is_pure(const Eigen::Matrix4d& sigma, double tol = 1e-9);

template <class Scalar>
double uhlmann_fidelity(const GaussianState<Scalar>& f, const GaussianState<Scalar>& d) {
  if (double(f.moments.cwiseAbs().maxCoeff()) > 1e-12 || double(d.moments.cwiseAbs().maxCoeff()) > 1e-12)
    throw ParameterError("uhlmann_fidelity: states must have zero first moments");
  return uhlmann_fidelity(Eigen::Matrix4d(f.cov.template cast<double>()),
                          Eigen::Matrix4d(d.cov.template cast<double>()));
}

}  // namespace rgc
