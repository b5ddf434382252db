#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>

#include "rgc/noise.hpp"

namespace rgc {

template <class Scalar>
using Mat4 = Eigen::Matrix<Scalar, 4, 4>;
template <class Scalar>
using Vec4 = Eigen::Matrix<Scalar, 4, 1>;
template <class Scalar>
using Mat2 = Eigen::Matrix<Scalar, 2, 2>;

// Block symplectic form, one [[0, 1], [−1, 0]] block per mode.
template <class Scalar = double, int Modes = 2>
Eigen::Matrix<Scalar, 2 * Modes, 2 * Modes> symplectic_form() {
  Eigen::Matrix<Scalar, 2 * Modes, 2 * Modes> s;
  s.setZero();
  for (int k = 0; k < Modes; ++k) {
    s(2 * k, 2 * k + 1) = Scalar(1);
    s(2 * k + 1, 2 * k) = Scalar(-1);
  }
  return s;
}

// Smallest eigenvalue of the Hermitian matrix X + iΣ.
template <class Derived>
double min_eig_plus_isigma(const Eigen::MatrixBase<Derived>& x) {
  constexpr int n = Derived::RowsAtCompileTime;
  using C = Eigen::Matrix<cplx, n, n>;
  const Eigen::Matrix<double, n, n> xd = x.template cast<double>();
  C h = xd.template cast<cplx>() + cplx(0.0, 1.0) * symplectic_form<double, n / 2>().template cast<cplx>();
  Eigen::SelfAdjointEigenSolver<C> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

template <class Scalar = double>
struct GaussianState {
  Vec4<Scalar> moments = Vec4<Scalar>::Zero();
  Mat4<Scalar> cov = Mat4<Scalar>::Identity();
};

template <class Scalar = double>
GaussianState<Scalar> vacuum_state() {
  return {};
}

template <class Scalar = double>
GaussianState<Scalar> squeezed_thermal_state(Scalar r, Scalar n) {
  using std::cosh;
  using std::sinh;
  if (!(n >= Scalar(0))) throw ParameterError("squeezed_thermal_state: n must be >= 0");
  const Scalar c = cosh(2 * r), s = sinh(2 * r), f = 1 + 2 * n;
  GaussianState<Scalar> st;
  st.cov << c, 0, s, 0,
            0, c, 0, -s,
            s, 0, c, 0,
            0, -s, 0, c;
  st.cov *= f;
  return st;
}

template <class Scalar = double>
GaussianState<Scalar> coherent_state(const Vec4<Scalar>& d) {
  GaussianState<Scalar> st;
  st.moments = d;
  return st;
}

template <class Scalar>
void check_state(const GaussianState<Scalar>& s, const char* who) {
  const Mat4<Scalar> d = s.cov - s.cov.transpose();
  if (double(d.cwiseAbs().maxCoeff()) > 1e-12)
    throw InconsistencyError(std::string(who) + ": covariance not symmetric");
  const double m = min_eig_plus_isigma(s.cov);
  if (m < -1e-8)
    throw InconsistencyError(std::string(who) + ": uncertainty relation violated (min eig " +
                             std::to_string(m) + ")");
}

template <class Scalar = double>
struct ChannelMatrices {
  Mat4<Scalar> M = Mat4<Scalar>::Identity();
  Mat4<Scalar> N = Mat4<Scalar>::Zero();
};

// min eigenvalue of N + iΣ − i M Σ Mᵀ
template <class Scalar>
double complete_positivity_margin(const ChannelMatrices<Scalar>& ch) {
  using C = Eigen::Matrix4cd;
  const Eigen::Matrix4d M = ch.M.template cast<double>(), N = ch.N.template cast<double>();
  const Eigen::Matrix4d S = symplectic_form<double>();
  C h = N.cast<cplx>() + cplx(0.0, 1.0) * (S - M * S * M.transpose()).cast<cplx>();
  h = (0.5 * (h + h.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<C> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

template <class Scalar>
GaussianState<Scalar> apply_two_mode(const ChannelMatrices<Scalar>& ch, const GaussianState<Scalar>& in) {
  check_state(in, "apply_two_mode input");
  GaussianState<Scalar> out;
  out.moments = ch.M * in.moments;
  out.cov = ch.M * in.cov * ch.M.transpose() + ch.N;
  out.cov = (Scalar(0.5) * (out.cov + out.cov.transpose())).eval();
  check_state(out, "apply_two_mode output");
  return out;
}

// σ' − 1 = M(σ − 1)Mᵀ: drops the vacuum noise of the channel.
template <class Scalar>
GaussianState<Scalar> apply_two_mode_approx(const Mat4<Scalar>& M, const GaussianState<Scalar>& in) {
  GaussianState<Scalar> out;
  const Mat4<Scalar> I = Mat4<Scalar>::Identity();
  out.moments = M * in.moments;
  out.cov = M * (in.cov - I) * M.transpose() + I;
  return out;
}

template <class Scalar = double>
struct SingleModeChannel {
  Mat2<Scalar> M, N;
};

template <class Scalar>
SingleModeChannel<Scalar> reduce_single_mode(const ChannelMatrices<Scalar>& ch) {
  return {ch.M.template topLeftCorner<2, 2>(), ch.N.template topLeftCorner<2, 2>()};
}

struct SingleModeCanonical {
  double tau = 1.0;
  double nbar = 0.0;
  int rank = 2;
  double noise() const { return (1.0 - tau) * (2.0 * nbar + 1.0); }
};

SingleModeCanonical canonical_form(const Eigen::Matrix2d& M_sm, const Eigen::Matrix2d& N_sm);

template <class Scalar>
SingleModeCanonical canonical_form(const SingleModeChannel<Scalar>& c) {
  return canonical_form(c.M.template cast<double>(), c.N.template cast<double>());
}

// ((x+1)/2) log((x+1)/2) − ((x−1)/2) log((x−1)/2), log in the given base.
double entropy_g(double x, double base = 2.0);

double classical_capacity_lb(const SingleModeCanonical& c, double mbar = 1.0, double base = 2.0);
double quantum_capacity_lb(const SingleModeCanonical& c, double base = 2.0);

}  // namespace rgc
