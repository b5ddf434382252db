#include "rgc/measures.hpp"

#include <sstream>

namespace rgc {

namespace {

NegativityResult from_excess(const Eigen::Matrix4d& excess, double base) {
  // partial transpose: momentum of mode II changes sign
  const Eigen::Vector4d p(1.0, 1.0, 1.0, -1.0);
  const Eigen::Matrix4d E = p.asDiagonal() * excess * p.asDiagonal();
  const Eigen::Matrix4d S = symplectic_form<double>();
  // −Σσ̃Σσ̃ − 1 for σ̃ = 1 + E; its eigenvalues are ν̃² − 1
  const Eigen::Matrix4d K = E - S * E * S - S * E * S * E;
  Eigen::EigenSolver<Eigen::Matrix4d> es(K, false);
  const double lmin = es.eigenvalues().real().minCoeff();
  if (lmin <= -1.0) throw InconsistencyError("log_negativity: partial transpose is not a covariance");
  NegativityResult r;
  r.min_pt_symplectic_eig = std::sqrt(1.0 + lmin);
  r.value = lmin < 0.0 ? -0.5 * std::log1p(lmin) / std::log(base) : 0.0;
  return r;
}

}  // namespace

NegativityResult log_negativity(const Eigen::Matrix4d& sigma, double base) {
  return from_excess(sigma - Eigen::Matrix4d::Identity(), base);
}

NegativityResult log_negativity_invariants(const Eigen::Matrix4d& s, double base) {
  const double dA = s.topLeftCorner<2, 2>().determinant();
  const double dB = s.bottomRightCorner<2, 2>().determinant();
  const double dC = s.topRightCorner<2, 2>().determinant();
  const double delta = dA + dB - 2.0 * dC;
  const double ds = s.determinant();
  double rad = delta * delta - 4.0 * ds;
  if (rad < -1e-12 * delta * delta) {
    std::ostringstream os;
    os << "log_negativity: complex symplectic eigenvalue (radicand " << rad << ")";
    throw InconsistencyError(os.str());
  }
  rad = std::max(rad, 0.0);
  NegativityResult r;
  r.min_pt_symplectic_eig = std::sqrt(0.5 * (delta - std::sqrt(rad)));
  r.value = std::max(0.0, -std::log(r.min_pt_symplectic_eig) / std::log(base));
  return r;
}

NegativityResult vacuum_output_negativity(double n_I, double n_II, cplx np, cplx nm, double base) {
  // σ − 1 assembled directly; forming 1 + N first would round N_I ~ 1e−17 away
  Eigen::Matrix4d e = vacuum_output_cov<double>(0.0, 0.0, np, nm);
  e.diagonal() << n_I, n_I, n_II, n_II;
  return from_excess(e, base);
}

bool is_pure(const Eigen::Matrix4d& sigma, double tol) { return std::abs(sigma.determinant() - 1.0) <= tol; }

double uhlmann_fidelity(const Eigen::Matrix4d& sf, const Eigen::Matrix4d& sd) {
  if (is_pure(sf) || is_pure(sd)) return uhlmann_fidelity_pure(sf, sd);
  return uhlmann_fidelity_general<double>(sf, sd);
}

double uhlmann_fidelity_pure(const Eigen::Matrix4d& sf, const Eigen::Matrix4d& sd) {
  return 4.0 / std::sqrt((sf + sd).determinant());
}

}  // namespace rgc
