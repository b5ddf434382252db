#include "rgc/channel.hpp"

#include <limits>
#include <sstream>

namespace rgc {

namespace {

int numeric_rank(const Eigen::Matrix2d& a) {
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(a);
  const auto s = svd.singularValues();
  const double tol = 1e-12 * std::max(1.0, s[0]);
  return static_cast<int>((s.array() > tol).count());
}

// g outside its domain: zero below 1, as the bounds require
double g_clamped(double x, double base) { return x <= 1.0 ? 0.0 : entropy_g(x, base); }

}  // namespace

SingleModeCanonical canonical_form(const Eigen::Matrix2d& M, const Eigen::Matrix2d& N) {
  SingleModeCanonical c;
  c.tau = M.determinant();
  if (c.tau < -1.0 - 1e-12 || c.tau > 1.0 + 1e-12) {
    std::ostringstream os;
    os << "canonical_form: det M = " << c.tau << " outside [-1, 1]";
    throw InconsistencyError(os.str());
  }
  double dn = N.determinant();
  if (dn < -1e-12) {
    std::ostringstream os;
    os << "canonical_form: det N = " << dn << " is negative";
    throw InconsistencyError(os.str());
  }
  dn = std::max(dn, 0.0);
  if (std::abs(c.tau - 1.0) < 1e-12)
    c.nbar = std::sqrt(dn);
  else
    c.nbar = std::sqrt(dn) / (2.0 * std::abs(1.0 - c.tau)) - 0.5;
  if (c.nbar < 0.0 && c.nbar > -1e-9) c.nbar = 0.0;  // rounding around a pure-loss channel
  c.rank = std::min(numeric_rank(M), numeric_rank(N));
  return c;
}

double entropy_g(double x, double base) {
  if (!(x >= 1.0 - 1e-12)) {
    std::ostringstream os;
    os << "entropy_g: argument " << x << " below 1";
    throw DomainError(os.str());
  }
  const double lb = std::log(base);
  const double p = 0.5 * (x + 1.0), q = 0.5 * (x - 1.0);
  const double t = q > 0 ? q * std::log(q) : 0.0;
  return (p * std::log(p) - t) / lb;
}

double classical_capacity_lb(const SingleModeCanonical& c, double mbar, double base) {
  if (mbar < c.nbar) {
    std::ostringstream os;
    os << "classical_capacity_lb: input energy " << mbar << " below thermal number " << c.nbar;
    warn(os.str());
  }
  const double a = 2.0 * c.tau * (mbar - c.nbar) + 2.0 * c.nbar + 1.0;
  const double b = 2.0 * c.nbar * (1.0 - c.tau);
  return g_clamped(a, base) - g_clamped(b, base);
}

double quantum_capacity_lb(const SingleModeCanonical& c, double base) {
  if (std::abs(c.tau - 1.0) < 1e-15) {
    if (c.nbar == 0.0) return std::numeric_limits<double>::infinity();
  }
  const double r = std::abs(c.tau / (1.0 - c.tau));
  const double v = std::log(r) / std::log(base) - g_clamped(2.0 * c.nbar + 1.0, base);
  return std::max(0.0, v);
}

}  // namespace rgc
