#include "rgc/specfun.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "rgc/quadrature.hpp"

namespace rgc {

namespace {

constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_c = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
const double half_log_2pi = 0.5 * std::log(2.0 * pi);

cplx lgamma_right(cplx z) {
  z -= 1.0;
  cplx s = lanczos_c[0];
  for (int i = 1; i < 9; ++i) s += lanczos_c[i] / (z + double(i));
  const cplx t = z + lanczos_g + 0.5;
  return half_log_2pi + (z + 0.5) * std::log(t) - t + std::log(s);
}

// log sin(πz) without overflow for large |Im z|
cplx log_sin_pi(cplx z) {
  const double y = z.imag();
  const cplx i(0.0, 1.0);
  if (std::abs(y) < 5.0) return std::log(std::sin(pi * z));
  if (y > 0) return -i * pi * z + std::log(std::exp(2.0 * i * pi * z) - 1.0) - std::log(2.0 * i);
  return i * pi * z + std::log(1.0 - std::exp(-2.0 * i * pi * z)) - std::log(2.0 * i);
}

void check_pole(cplx z) {
  if (z.real() > 0.5) return;
  const double n = std::round(z.real());
  if (n <= 0 && std::abs(z - n) < 1e-12) {
    std::ostringstream os;
    os << "gamma_complex: pole at z = " << z;
    throw DomainError(os.str());
  }
}

// Re[e^{iνℓ} Γ(−iν)] · e^{s|ν|}, ℓ = log of half the argument
double small_form(double nu, double ell, double s) {
  const double a = std::abs(nu);
  if (a < 1e-7) return -ell - euler_gamma;
  if (a < 1.0) {
    // Γ(−iν) = (i/ν) Γ(1−iν) keeps the pole out of the arithmetic
    const cplx g1 = std::exp(lgamma_complex(cplx(1.0, -nu)));
    const cplx ph(std::cos(nu * ell), std::sin(nu * ell));
    return -(ph * g1).imag() / nu * std::exp(s * a);
  }
  return std::exp(cplx(s * a, nu * ell) + lgamma_complex(cplx(0.0, -nu))).real();
}

bool use_series(double a, double x) { return x <= 700.0 && a >= (2.0 * x + 10.0) / pi; }

// e^{π|ν|/2} K_iν(x) via the I-series
double scaled_series(double a, double x) {
  if (a == 0.0) throw DomainError("series route undefined at nu = 0");
  const cplx ti = bessel_i_imag_shifted(a, x, 0.5 * pi * a);
  return -2.0 * pi * ti.imag() / (-std::expm1(-2.0 * pi * a));
}

double integral_route(double a, double x) {
  const double tmax = std::acosh(1.0 + 40.0 / x);
  QuadOptions o;
  o.rel_tol = 1e-13;
  o.abs_tol = 1e-16 * std::exp(-x) * (1.0 + std::abs(std::log(x)) + std::sqrt(pi / (2 * x)));
  o.max_subdivisions = 4000;
  if (a > 0.5) o.period = 2.0 * pi / a;
  auto r = integrate_1d(
      [&](double t) { return std::exp(-x * std::cosh(t)) * std::cos(a * t); }, 0.0, tmax, o);
  if (!r.converged) {
    std::ostringstream os;
    os.precision(17);
    os << "bessel_k_imag: quadrature did not converge (nu=" << a << ", x=" << x << ")";
    throw ConvergenceError(os.str());
  }
  return r.value;
}

// e^{π|ν|/2} K_iν(x), dispatching over the three routes
double scaled_k(double nu, double x) {
  if (!(x > 0) || !std::isfinite(x)) throw DomainError("bessel_k_imag: need x > 0");
  const double a = std::abs(nu);
  if (x < k_imag_x_switch) return small_form(a, std::log(0.5 * x), 0.5 * pi);
  if (a > 0 && use_series(a, x)) return scaled_series(a, x);
  return integral_route(a, x) * std::exp(0.5 * pi * a);
}

}  // namespace

cplx lgamma_complex(cplx z) {
  check_pole(z);
  if (z.real() >= 0.5) return lgamma_right(z);
  return std::log(pi) - log_sin_pi(z) - lgamma_right(1.0 - z);
}

cplx gamma_complex(cplx z) {
  check_pole(z);
  if (z.imag() == 0.0) return std::tgamma(z.real());
  if (z.real() < 0.5 && std::abs(z.imag()) < 5.0)
    return pi / (std::sin(pi * z) * std::exp(lgamma_right(1.0 - z)));
  return std::exp(lgamma_complex(z));
}

cplx bessel_i_imag_shifted(double nu, double x, double shift) {
  if (!(x > 0)) throw DomainError("bessel_i_imag: need x > 0");
  if (x > 700) throw std::overflow_error("bessel_i_imag: x > 700 outside supported range");
  const double ell = std::log(0.5 * x);
  cplx term = std::exp(cplx(-shift, nu * ell) - lgamma_complex(cplx(1.0, nu)));
  cplx sum = term;
  const double q = 0.25 * x * x;
  for (int k = 1; k <= 500; ++k) {
    term *= q / (double(k) * cplx(double(k), nu));
    sum += term;
    if (k > 0.5 * x && std::abs(term) <= 1e-17 * std::abs(sum)) {
      if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag()))
        throw std::overflow_error("bessel_i_imag: overflow");
      return sum;
    }
  }
  throw ConvergenceError("bessel_i_imag: series did not converge in 500 terms");
}

cplx bessel_i_imag(double nu, double x) { return bessel_i_imag_shifted(nu, x, 0.0); }

double bessel_k_imag_small(double nu, double eps) {
  if (!(eps > 0 && eps < 0.01)) throw DomainError("bessel_k_imag_small: need 0 < eps < 0.01");
  return small_form(std::abs(nu), std::log(eps), 0.0);
}

double bessel_k_imag_integral(double nu, double x) {
  if (!(x > 0)) throw DomainError("bessel_k_imag: need x > 0");
  return integral_route(std::abs(nu), x);
}

double bessel_k_imag_series(double nu, double x) {
  if (!(x > 0)) throw DomainError("bessel_k_imag: need x > 0");
  const double a = std::abs(nu);
  return scaled_series(a, x) * std::exp(-0.5 * pi * a);
}

double bessel_k_imag_scaled(double nu, double x) { return scaled_k(nu, x); }

double bessel_k_imag(double nu, double x) {
  const double a = std::abs(nu);
  return scaled_k(a, x) * std::exp(-0.5 * pi * a);
}

double rindler_kernel(double nu, double x) {
  const double a = std::abs(nu);
  if (a == 0.0) return 0.0;
  return std::sqrt(-0.5 * std::expm1(-2.0 * pi * a)) / pi * scaled_k(a, x);
}

}  // namespace rgc
