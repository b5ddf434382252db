#pragma once

#include <Eigen/Dense>
#include <utility>

#include "rgc/bogoliubov.hpp"
#include "rgc/quadrature.hpp"

namespace rgc {

struct Geometry {
  double D = 0.0;
  Orientation orientation = Orientation::counter;
  double accel_I = 0.1, accel_II = 0.1;
  double L = 2.0;  // packet width used for the separation checks
};

// Throws ParameterError when the two wedges would bring the packets too close.
void validate(const Geometry& g);

struct NoiseOptions {
  double d_eps = 1e-6;      // |D| below d_eps/m uses the coincident-apex limit
  double rel_tol = 1e-10;   // inner (spectral-overlap) integrals
  double cut_log = -57.6;   // ln 1e−25: drop regions whose exponential weight is below this
};

struct CrossTerms {
  cplx plus, minus;
  double error_estimate = 0.0;
  bool converged = true;
};

IntegrationResult<double> unruh_diagonal(const RindlerSpectrum& spec);

CrossTerms cross_counter(const RindlerSpectrum& spec_I, const RindlerSpectrum& spec_II,
                         const Geometry& geom, double mass, const NoiseOptions& opt = {});
CrossTerms cross_parallel(const RindlerSpectrum& spec_I, const RindlerSpectrum& spec_II,
                          const Geometry& geom, double mass, const NoiseOptions& opt = {});
CrossTerms cross_terms(const RindlerSpectrum& spec_I, const RindlerSpectrum& spec_II,
                       const Geometry& geom, double mass, const NoiseOptions& opt = {});

// Reusable evaluator for sweeps over D at fixed spectra: the spectral-overlap
// line integrals do not depend on |D| and are computed once per sign of D.
class CrossTermEngine {
 public:
  CrossTermEngine(const RindlerSpectrum& spec_I, const RindlerSpectrum& spec_II,
                  Orientation o, double mass, const NoiseOptions& opt = {});
  CrossTerms operator()(double D);
  // coincident-apex limit
  CrossTerms limit() const;

 private:
  struct Line {
    Eigen::VectorXd t, w;
    Eigen::VectorXcd g;
    bool ready = false;
  };
  const Line& line(int term, int sgn);
  cplx overlap(double t, bool outer_is_u, bool conj_II, int term, int sgn) const;

  const RindlerSpectrum& I_;
  const RindlerSpectrum& II_;
  Orientation orient_;
  double mass_, a_;
  NoiseOptions opt_;
  Line lines_[2][2];
};

template <class Scalar = double>
struct NoiseMatrix {
  double n_I = 0.0, n_II = 0.0;
  cplx n_cross_plus{0.0}, n_cross_minus{0.0};
  Eigen::Matrix<Scalar, 4, 4> matrix = Eigen::Matrix<Scalar, 4, 4>::Zero();
};

// Covariance of the output for vacuum input, built from the noise terms.
template <class Scalar = double>
Eigen::Matrix<Scalar, 4, 4> vacuum_output_cov(double n_I, double n_II, cplx np, cplx nm) {
  Eigen::Matrix<Scalar, 4, 4> s = Eigen::Matrix<Scalar, 4, 4>::Zero();
  s(0, 0) = s(1, 1) = Scalar(1.0 + n_I);
  s(2, 2) = s(3, 3) = Scalar(1.0 + n_II);
  s(0, 2) = s(2, 0) = Scalar(np.real());
  s(0, 3) = s(3, 0) = Scalar(nm.imag());
  s(1, 2) = s(2, 1) = Scalar(np.imag());
  s(1, 3) = s(3, 1) = Scalar(-nm.real());
  return s;
}

// Smallest eigenvalue of σ + iΣ (two-mode symplectic form).
double uncertainty_margin(const Eigen::Matrix4d& sigma);

// N = σ_vac,out − M Mᵀ. Throws InconsistencyError if σ_vac,out is unphysical.
template <class Scalar = double>
NoiseMatrix<Scalar> build_N(double n_I, double n_II, cplx np, cplx nm,
                            const Eigen::Matrix<Scalar, 4, 4>& M) {
  NoiseMatrix<Scalar> r{n_I, n_II, np, nm, {}};
  const Eigen::Matrix<Scalar, 4, 4> s = vacuum_output_cov<Scalar>(n_I, n_II, np, nm);
  const double margin = uncertainty_margin(s.template cast<double>());
  if (margin < -1e-8)
    throw InconsistencyError("build_N: vacuum output violates the uncertainty relation (min eig " +
                             std::to_string(margin) + ")");
  r.matrix = s - M * M.transpose();
  r.matrix = (0.5 * (r.matrix + r.matrix.transpose())).eval();
  return r;
}

}  // namespace rgc
