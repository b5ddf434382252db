#pragma once

#include <Eigen/Dense>

#include "rgc/modes.hpp"

namespace rgc {

enum class Orientation { counter, parallel };

// Minkowski -> Rindler coefficients for one wedge slot. Slot I has its apex
// at +D/2, slot II at −D/2. For parallel orientation both slots are
// right-facing wedges, so slot II uses the region-I form.
struct MinkRindCoeff {
  Region region = Region::I;
  double a_conv = 1.0;
  double D = 0.0;
  Orientation orientation = Orientation::counter;
  double mass = 0.1;
};

// α_{Ωk} = (u_k, w_Ω)
cplx mink_rindler_alpha(const MinkRindCoeff& c, double Omega, double k);
// β_{Ωk}: −e^{−πΩ/a} α_{Ωk} with the opposite translation phase
cplx mink_rindler_beta(const MinkRindCoeff& c, double Omega, double k);

struct OverlapCoeffs {
  cplx alpha_I{1.0}, beta_I{0.0}, alpha_II{1.0}, beta_II{0.0};
};

struct OverlapPair {
  cplx alpha, beta;
};

// Double-integral route: the input enters through its cut Minkowski spectrum,
// the output through its Rindler spectrum.
OverlapPair passive_overlap(const MinkowskiSpectrum& phi_cut, const RindlerSpectrum& psi,
                            const MinkRindCoeff& c);

OverlapCoeffs mode_overlaps(const WavePacket& phi_I, const WavePacket& phi_II,
                            const RindlerSpectrum& psi_I, const RindlerSpectrum& psi_II,
                            const MinkRindCoeff& c_I, const MinkRindCoeff& c_II);
OverlapCoeffs mode_overlaps(const ActiveMode& I, const ActiveMode& II);

template <class Scalar = double>
Eigen::Matrix<Scalar, 2, 2> block_of(const cplx& alpha, const cplx& beta) {
  Eigen::Matrix<Scalar, 2, 2> b;
  b << Scalar((alpha - beta).real()), Scalar(-(alpha + beta).imag()),
      Scalar((alpha - beta).imag()), Scalar((alpha + beta).real());
  return b;
}

template <class Scalar = double>
Eigen::Matrix<Scalar, 4, 4> build_M(const OverlapCoeffs& o) {
  Eigen::Matrix<Scalar, 4, 4> m = Eigen::Matrix<Scalar, 4, 4>::Zero();
  m.template topLeftCorner<2, 2>() = block_of<Scalar>(o.alpha_I, o.beta_I);
  m.template bottomRightCorner<2, 2>() = block_of<Scalar>(o.alpha_II, o.beta_II);
  return m;
}

}  // namespace rgc
