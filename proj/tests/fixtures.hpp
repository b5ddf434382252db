#pragma once

#include "rgc/noise.hpp"

// Passive modes at 𝒜 = 0.1, L = 2, m = 0.1, built once per test binary.
struct Fig8Modes {
  rgc::WavePacket phi_I, phi_II, psi_I, psi_II;
  rgc::RindlerSpectrum rs_I, rs_II;
  rgc::OverlapCoeffs overlaps;
};

inline const Fig8Modes& fig8_modes() {
  static const Fig8Modes m = [] {
    using namespace rgc;
    Fig8Modes f;
    f.phi_I = build_input_mode(make_mode(Region::I, ModeKind::inertial, 0.1));
    f.phi_II = build_input_mode(make_mode(Region::II, ModeKind::inertial, 0.1));
    f.psi_I = build_passive_output_mode(make_mode(Region::I, ModeKind::passive_output, 0.1));
    f.psi_II = build_passive_output_mode(make_mode(Region::II, ModeKind::passive_output, 0.1));
    f.rs_I = apply_zero_frequency_cutoff(rindler_spectrum(f.psi_I, 1.0));
    f.rs_II = apply_zero_frequency_cutoff(rindler_spectrum(f.psi_II, 1.0));
    const MinkRindCoeff cI{Region::I, 1.0, 0.0, Orientation::counter, 0.1};
    const MinkRindCoeff cII{Region::II, 1.0, 0.0, Orientation::counter, 0.1};
    f.overlaps = mode_overlaps(f.phi_I, f.phi_II, rindler_spectrum(f.psi_I, 1.0),
                               rindler_spectrum(f.psi_II, 1.0), cI, cII);
    return f;
  }();
  return m;
}
