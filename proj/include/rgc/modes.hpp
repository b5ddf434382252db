#pragma once

#include <Eigen/Dense>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "rgc/panels.hpp"
#include "rgc/specfun.hpp"

namespace rgc {

enum class Region { I, II };
enum class ModeKind { inertial, passive_output, active_output };

// +1 for the right wedge, −1 for its mirror image.
inline double region_sign(Region r) { return r == Region::I ? 1.0 : -1.0; }

struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Sink for advisory messages; defaults to stderr.
void set_warning_handler(std::function<void(const std::string&)> h);
void warn(const std::string& msg);

struct ModeParams {
  Region region = Region::I;
  double x0 = 10.0;  // signed, negative in region II
  double L = 2.0;
  double Omega0 = 0.0;
  double mass = 0.1;
  double accel = 0.1;  // proper acceleration of the wedge the mode is tied to
  ModeKind kind = ModeKind::inertial;

  double wavenumber() const { return std::sqrt(Omega0 * Omega0 - mass * mass); }
};

// x0 = ±1/accel; Omega0 defaults to √(25 + m²), i.e. wavenumber exactly 5.
ModeParams make_mode(Region r, ModeKind kind, double accel, double L = 2.0, double mass = 0.1,
                     std::optional<double> Omega0 = std::nullopt);
void validate(const ModeParams& p);

// Samples on the t = 0 slice. For output kinds the grid coordinate is χ of
// the mode's own wedge and tderiv holds ∂_τ; otherwise x and ∂_t.
struct WavePacket {
  ModeParams params;
  Eigen::VectorXd grid;
  Eigen::VectorXd weights;
  Eigen::VectorXcd value;
  Eigen::VectorXcd tderiv;
  // panel layout in s = log(|x|/|x0|); empty for hand-built packets
  PanelGrid panels;

  bool rindler() const { return params.kind != ModeKind::inertial; }
  // ∂_t on the slice, converting ∂_τ through ∂_t = ∂_τ / (𝒜χ)
  Eigen::VectorXcd time_derivative() const;
  // Interpolated value and ∂_t at x (zero outside the sampled range).
  cplx value_at(double x) const;
  cplx dt_at(double x) const;
  double peak_position() const;
};

struct RindlerSpectrum {
  double a_conv = 1.0;
  Region region = Region::I;
  double mass = 0.1;
  PanelGrid nu_panels;        // in ν = Ω/a
  Eigen::VectorXd omega_grid; // Ω nodes
  Eigen::VectorXd weights;    // dΩ weights
  Eigen::VectorXcd amps;      // (ψ, w_Ω)
  Eigen::VectorXcd amps_neg;  // (ψ, w_Ω*)
  Eigen::VectorXcd reduced;   // amps / √(1 − e^{−2πΩ/a}), entire in Ω

  double omega_max() const { return omega_grid.size() ? a_conv * nu_panels.upper() : 0.0; }
  // interpolated (ψ, w_Ω); zero outside the grid
  cplx amp(double Omega) const;
  cplx reduced_amp(double Omega) const;
  double positive_weight() const;
  double negative_weight() const;
  double kg_norm() const { return positive_weight() - negative_weight(); }
};

struct MinkowskiSpectrum {
  Eigen::VectorXd k_grid;
  Eigen::VectorXd weights;     // dk weights
  Eigen::VectorXcd amps_pos;   // (φ, u_k)
  Eigen::VectorXcd amps_neg;   // (φ, u_k*)

  double positive_weight() const;
  double negative_weight() const;
  double kg_norm() const { return positive_weight() - negative_weight(); }
};

struct SpectrumOptions {
  double tail_tol = 1e-9;        // stop once amplitudes fall below this fraction of the peak
  double nu_cap = 0.0;           // 0: automatic
  int order = 16;
};

WavePacket build_input_mode(const ModeParams& p);
WavePacket build_passive_output_mode(const ModeParams& p);

struct ActiveMode {
  WavePacket packet;
  RindlerSpectrum spectrum;
  // (ψ, φ) and the matching β; |alpha| = √∫|(φ, w_Ω)|² dΩ, the phase is the
  // one left by fix_peak_phase
  cplx alpha;
  cplx beta;
};
ActiveMode build_active_output_mode(const WavePacket& input, double accel, double a_conv,
                                    const SpectrumOptions& opt = {});

cplx kg_inner(const WavePacket& f, const WavePacket& g);

RindlerSpectrum rindler_spectrum(const WavePacket& psi, double a_conv,
                                 const SpectrumOptions& opt = {});

struct MinkowskiOptions {
  double nu_max = 0.0;     // highest Rindler order the grid must resolve (0: automatic)
  double k_tail = 12.0;    // k_max = k0 + k_tail / L
};
MinkowskiSpectrum minkowski_spectrum(const WavePacket& phi, const MinkowskiOptions& opt = {});

MinkowskiSpectrum apply_zero_frequency_cutoff(const MinkowskiSpectrum& s);
RindlerSpectrum apply_zero_frequency_cutoff(const RindlerSpectrum& s);

// Rotate packet and spectrum together so the amplitude at the spectral peak
// is real and positive. Returns the applied phase.
double fix_peak_phase(WavePacket& psi, RindlerSpectrum& spec);

// Columnar text dumps: position/frequency, re, im.
void write_columns(std::ostream& os, const WavePacket& p);
void write_columns(std::ostream& os, const RindlerSpectrum& s);

}  // namespace rgc
