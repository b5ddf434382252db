#include "rgc/bogoliubov.hpp"

namespace rgc {

namespace {

// region-I type unless this is the mirrored slot of a counter pair
bool mirrored(const MinkRindCoeff& c) {
  return c.region == Region::II && c.orientation == Orientation::counter;
}

double apex(const MinkRindCoeff& c) { return c.region == Region::I ? 0.5 * c.D : -0.5 * c.D; }

cplx alpha_unshifted(const MinkRindCoeff& c, double Omega, double k) {
  if (!(Omega > 0)) throw DomainError("mink_rindler_alpha: need Omega > 0");
  if (!(c.a_conv > 0)) throw DomainError("mink_rindler_alpha: need a_conv > 0");
  const double nu = Omega / c.a_conv;
  const double om = std::hypot(k, c.mass);
  const double th = std::asinh(k / c.mass);
  // (4πωa sinh πν)^{−1/2} e^{πν/2} written without overflow
  const double mag = std::sqrt(2.0 / (-std::expm1(-2.0 * pi * nu))) / std::sqrt(4.0 * pi * om * c.a_conv);
  const cplx v = std::polar(mag, -nu * th);
  return mirrored(c) ? std::conj(v) : v;
}

}  // namespace

cplx mink_rindler_alpha(const MinkRindCoeff& c, double Omega, double k) {
  return alpha_unshifted(c, Omega, k) * std::polar(1.0, -k * apex(c));
}

cplx mink_rindler_beta(const MinkRindCoeff& c, double Omega, double k) {
  const double nu = Omega / c.a_conv;
  return -std::exp(-pi * nu) * alpha_unshifted(c, Omega, k) * std::polar(1.0, k * apex(c));
}

OverlapPair passive_overlap(const MinkowskiSpectrum& phi, const RindlerSpectrum& psi,
                            const MinkRindCoeff& c) {
  if (std::abs(psi.a_conv - c.a_conv) > 1e-14 * c.a_conv)
    throw ParameterError("passive_overlap: spectrum and coefficients use different a_conv");
  // the packets live in their own wedge frames, so the translation phases of
  // the coefficients and of the plane-wave amplitudes cancel: evaluate at D = 0
  MinkRindCoeff c0 = c;
  c0.D = 0.0;
  cplx al = 0.0, be = 0.0;
  const Eigen::Index nk = phi.k_grid.size();
  for (Eigen::Index j = 0; j < psi.omega_grid.size(); ++j) {
    const double Om = psi.omega_grid[j];
    cplx ga = 0.0, gb = 0.0;
    for (Eigen::Index i = 0; i < nk; ++i) {
      const cplx a = mink_rindler_alpha(c0, Om, phi.k_grid[i]);
      ga += phi.weights[i] * std::conj(a) * std::conj(phi.amps_pos[i]);
      gb += phi.weights[i] * std::conj(a) * phi.amps_pos[i];
    }
    al += psi.weights[j] * psi.amps[j] * ga;
    be += psi.weights[j] * psi.amps[j] * (-std::exp(-pi * Om / psi.a_conv)) * gb;
  }
  return {al, be};
}

OverlapCoeffs mode_overlaps(const WavePacket& phi_I, const WavePacket& phi_II,
                            const RindlerSpectrum& psi_I, const RindlerSpectrum& psi_II,
                            const MinkRindCoeff& c_I, const MinkRindCoeff& c_II) {
  MinkowskiOptions mo;
  auto one = [&](const WavePacket& phi, const RindlerSpectrum& psi, const MinkRindCoeff& c) {
    mo.nu_max = psi.nu_panels.upper();
    return passive_overlap(apply_zero_frequency_cutoff(minkowski_spectrum(phi, mo)),
                           apply_zero_frequency_cutoff(psi), c);
  };
  const OverlapPair a = one(phi_I, psi_I, c_I);
  const OverlapPair b = one(phi_II, psi_II, c_II);
  return {a.alpha, a.beta, b.alpha, b.beta};
}

OverlapCoeffs mode_overlaps(const ActiveMode& I, const ActiveMode& II) {
  return {I.alpha, I.beta, II.alpha, II.beta};
}

}  // namespace rgc
