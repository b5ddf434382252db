#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace rgc {

using cplx = std::complex<double>;

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InconsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double euler_gamma = 0.577215664901532860606512090082402431;

// Lanczos (g = 7, 9 terms) with reflection below Re z = 1/2.
cplx gamma_complex(cplx z);
// exp(lgamma_complex(z)) == Γ(z); the imaginary part is only defined mod 2π.
cplx lgamma_complex(cplx z);

// K_iν(x) for real ν, x > 0.
double bessel_k_imag(double nu, double x);
// e^{π|ν|/2} K_iν(x); stays O(1) where K_iν itself underflows.
double bessel_k_imag_scaled(double nu, double x);
// Re[ε^{iν} Γ(−iν)], the leading small-argument form of K_iν(2ε).
double bessel_k_imag_small(double nu, double eps);

// The individual evaluation routes, exposed for cross-checks.
double bessel_k_imag_integral(double nu, double x);
double bessel_k_imag_series(double nu, double x);

// Switch between the small-argument form and the full evaluation.
inline constexpr double k_imag_x_switch = 1e-2;

// I_iν(x) from the ascending series.
cplx bessel_i_imag(double nu, double x);
// e^{−shift} I_iν(x), the shift applied inside the exponent of every term.
cplx bessel_i_imag_shifted(double nu, double x, double shift);

// √(sinh(π|ν|))/π · K_iν(x), the combination entering Rindler mode functions.
double rindler_kernel(double nu, double x);

}  // namespace rgc
