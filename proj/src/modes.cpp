#include "rgc/modes.hpp"

#include <iostream>
#include <mutex>
#include <sstream>

#include "rgc/bogoliubov.hpp"

namespace rgc {

namespace {

std::mutex warn_mutex;
std::function<void(const std::string&)> warn_handler;

constexpr int slice_order = 16;

double envelope(double y, double ax0, double L) {
  const double s = ax0 / L * std::log(y / ax0);
  return std::exp(-2.0 * s * s);
}

// Log-spaced Gauss-Legendre panels covering [|x0| − 6L, |x0| + 6L] ∩ (0, ∞),
// trimmed where the envelope is below ~1e−23.
PanelGrid slice_panels(double ax0, double L, double k) {
  const double sc = 5.2 * L / ax0;
  const double lo_frac = 1.0 - 6.0 * L / ax0;
  const double s_lo = lo_frac > 0 ? std::max(-sc, std::log(lo_frac)) : -sc;
  const double s_hi = std::min(sc, std::log1p(6.0 * L / ax0));
  const double xmax = ax0 * std::exp(s_hi);
  const double lambda = 2.0 * pi / std::max(k, 1e-3);
  // 40 samples per wavelength at the widest spacing
  const double ds = lambda / (40.0 * xmax) * slice_order;
  const auto n = std::max<Eigen::Index>(4, static_cast<Eigen::Index>(std::ceil((s_hi - s_lo) / ds)));
  return PanelGrid::uniform(s_lo, s_hi, n, slice_order);
}

// Fill grid/weights in increasing x from the s-panels; region II mirrors.
void fill_slice(WavePacket& w) {
  const double sg = region_sign(w.params.region);
  const double ax0 = std::abs(w.params.x0);
  const auto& s = w.panels.nodes();
  const auto& ws = w.panels.weights();
  const Eigen::Index n = s.size();
  w.grid.resize(n);
  w.weights.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index i = sg > 0 ? j : n - 1 - j;
    const double y = ax0 * std::exp(s[i]);
    w.grid[j] = sg * y;
    w.weights[j] = y * ws[i];
  }
}

template <class V>
V panel_order(const WavePacket& w, const V& v) {
  if (w.params.region == Region::I) return v;
  return v.reverse().eval();
}

// ν panels: fine near the origin, then a width tied to the spectral spread.
double nu_panel_width(double nu, double ax0, double L, double m) {
  if (nu < 4.0) return 0.5;
  // K_iν(x) turns its phase at ≈ log(2ν/x) per unit ν; keep ~12 rad per panel
  const double rate = std::max(1.0, std::log(2.0 * nu / (m * ax0)));
  return std::min(std::clamp(ax0 / (2.0 * L), 1.0, 8.0), 12.0 / rate);
}

double default_nu_cap(const ModeParams& p) {
  const double ax0 = std::abs(p.x0);
  const double centre = p.accel > 0 ? p.Omega0 / p.accel : p.Omega0 * ax0;
  return std::max(40.0, 3.0 * centre + 40.0 * ax0 / p.L);
}

struct NuSweep {
  std::vector<double> edges{0.0};
  std::vector<double> nodes, weights;
};

}  // namespace

void set_warning_handler(std::function<void(const std::string&)> h) {
  std::lock_guard<std::mutex> lk(warn_mutex);
  warn_handler = std::move(h);
}

void warn(const std::string& msg) {
  std::lock_guard<std::mutex> lk(warn_mutex);
  if (warn_handler)
    warn_handler(msg);
  else
    std::cerr << "warning: " << msg << "\n";
}

ModeParams make_mode(Region r, ModeKind kind, double accel, double L, double mass,
                     std::optional<double> Omega0) {
  ModeParams p;
  p.region = r;
  p.kind = kind;
  p.accel = accel;
  p.L = L;
  p.mass = mass;
  p.Omega0 = Omega0 ? *Omega0 : std::sqrt(25.0 + mass * mass);
  if (!(accel > 0)) throw ParameterError("make_mode: accel must be > 0 to place the mode at 1/accel");
  p.x0 = region_sign(r) / accel;
  validate(p);
  return p;
}

void validate(const ModeParams& p) {
  std::ostringstream os;
  if (!(p.mass > 0)) os << "mass must be > 0; ";
  if (!(p.L > 0)) os << "L must be > 0; ";
  if (!(p.Omega0 > p.mass)) os << "Omega0 must exceed the mass; ";
  if (!(p.accel >= 0)) os << "accel must be >= 0; ";
  if (!(p.x0 != 0) || region_sign(p.region) * p.x0 <= 0) os << "x0 sign must match the region; ";
  if (p.kind != ModeKind::inertial && !(p.accel > 0)) os << "output modes need accel > 0; ";
  if (p.accel * p.L >= 0.5) os << "accel*L = " << p.accel * p.L << " violates accel*L < 0.5; ";
  if (!os.str().empty()) throw ParameterError("mode parameters: " + os.str());
  if (p.accel * p.L > 0.2) {
    std::ostringstream w;
    w << "accel*L = " << p.accel * p.L << " > 0.2: weakly localized mode";
    warn(w.str());
  }
  if (p.Omega0 * p.L < 5.0) {
    std::ostringstream w;
    w << "Omega0*L = " << p.Omega0 * p.L << " < 5: sizeable negative-frequency content";
    warn(w.str());
  }
}

Eigen::VectorXcd WavePacket::time_derivative() const {
  if (!rindler()) return tderiv;
  return (tderiv.array() / (params.accel * grid.array())).matrix();
}

cplx WavePacket::value_at(double x) const {
  if (panels.size() == 0) throw std::logic_error("value_at: packet has no panel layout");
  if (x * region_sign(params.region) <= 0) return 0.0;
  const double s = std::log(std::abs(x) / std::abs(params.x0));
  return panels.interpolate(panel_order(*this, value), s);
}

cplx WavePacket::dt_at(double x) const {
  if (panels.size() == 0) throw std::logic_error("dt_at: packet has no panel layout");
  if (x * region_sign(params.region) <= 0) return 0.0;
  const double s = std::log(std::abs(x) / std::abs(params.x0));
  return panels.interpolate(panel_order(*this, Eigen::VectorXcd(time_derivative())), s);
}

double WavePacket::peak_position() const {
  Eigen::Index i;
  value.cwiseAbs().maxCoeff(&i);
  return grid[i];
}

cplx RindlerSpectrum::reduced_amp(double Omega) const {
  return nu_panels.interpolate(reduced, Omega / a_conv);
}

cplx RindlerSpectrum::amp(double Omega) const {
  const double nu = Omega / a_conv;
  return reduced_amp(Omega) * std::sqrt(-std::expm1(-2.0 * pi * nu));
}

double RindlerSpectrum::positive_weight() const {
  return weights.dot(amps.cwiseAbs2());
}
double RindlerSpectrum::negative_weight() const {
  return weights.dot(amps_neg.cwiseAbs2());
}
double MinkowskiSpectrum::positive_weight() const { return weights.dot(amps_pos.cwiseAbs2()); }
double MinkowskiSpectrum::negative_weight() const { return weights.dot(amps_neg.cwiseAbs2()); }

WavePacket build_input_mode(const ModeParams& p) {
  if (p.kind != ModeKind::inertial) throw ParameterError("build_input_mode: kind must be inertial");
  validate(p);
  WavePacket w;
  w.params = p;
  const double ax0 = std::abs(p.x0), k = p.wavenumber();
  w.panels = slice_panels(ax0, p.L, k);
  fill_slice(w);
  const Eigen::Index n = w.grid.size();
  w.value.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double y = std::abs(w.grid[j]);
    w.value[j] = envelope(y, ax0, p.L) * std::sin(k * (y - ax0));
  }
  const double norm = 2.0 * p.Omega0 * w.weights.dot(w.value.cwiseAbs2());
  w.value /= std::sqrt(norm);
  w.tderiv = cplx(0.0, -p.Omega0) * w.value;
  return w;
}

WavePacket build_passive_output_mode(const ModeParams& p) {
  if (p.kind != ModeKind::passive_output)
    throw ParameterError("build_passive_output_mode: kind must be passive_output");
  validate(p);
  WavePacket w;
  w.params = p;
  const double ax0 = std::abs(p.x0);
  w.panels = slice_panels(ax0, p.L, p.wavenumber());
  fill_slice(w);
  const double nu0 = p.Omega0 / p.accel;
  const double shift = 0.5 * pi * nu0;
  const cplx i0 = std::conj(bessel_i_imag_shifted(nu0, p.mass * ax0, shift));
  const Eigen::Index n = w.grid.size();
  w.value.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double y = std::abs(w.grid[j]);
    const double f = (i0 * bessel_i_imag_shifted(nu0, p.mass * y, shift)).imag();
    w.value[j] = envelope(y, ax0, p.L) * f;
  }
  const Eigen::ArrayXd inv_chi = 1.0 / (p.accel * w.grid.array().abs());
  const double norm = 2.0 * p.Omega0 * (w.weights.array() * inv_chi * w.value.cwiseAbs2().array()).sum();
  w.value /= std::sqrt(norm);
  w.tderiv = cplx(0.0, -region_sign(p.region) * p.Omega0) * w.value;
  return w;
}

cplx kg_inner(const WavePacket& f, const WavePacket& g) {
  auto direct = [](const Eigen::VectorXd& wts, const Eigen::VectorXcd& fv, const Eigen::VectorXcd& ft,
                   const Eigen::VectorXcd& gv, const Eigen::VectorXcd& gt) {
    const cplx s = (wts.array() * (fv.conjugate().array() * gt.array() -
                                   gv.array() * ft.conjugate().array()))
                       .sum();
    return cplx(0.0, 1.0) * s;
  };
  const bool same = f.grid.size() == g.grid.size() &&
                    (f.grid - g.grid).cwiseAbs().maxCoeff() <=
                        1e-12 * std::max(1.0, f.grid.cwiseAbs().maxCoeff());
  if (same) return direct(f.weights, f.value, f.time_derivative(), g.value, g.time_derivative());

  const double flo = f.grid.minCoeff(), fhi = f.grid.maxCoeff();
  const double glo = g.grid.minCoeff(), ghi = g.grid.maxCoeff();
  if (fhi < glo || ghi < flo) {
    const double sep = std::abs(f.peak_position() - g.peak_position());
    if (sep > 5.0 * std::max(f.params.L, g.params.L)) return 0.0;
    throw std::domain_error("kg_inner: disjoint grids for nearby packets");
  }
  // integrate on the denser grid, interpolating the other packet onto it
  const bool f_base = f.grid.size() >= g.grid.size();
  const WavePacket& b = f_base ? f : g;
  const WavePacket& o = f_base ? g : f;
  const Eigen::Index n = b.grid.size();
  Eigen::VectorXcd ov(n), ot(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    ov[j] = o.value_at(b.grid[j]);
    ot[j] = o.dt_at(b.grid[j]);
  }
  const Eigen::VectorXcd bt = b.time_derivative();
  if (f_base) return direct(b.weights, b.value, bt, ov, ot);
  return direct(b.weights, ov, ot, b.value, bt);
}

namespace {

// Shared ν-panel march: evaluate(panel nodes) -> per-node |amplitude|, stop
// after the peak once a whole panel is below tail_tol·peak.
template <class Eval>
NuSweep march_nu(const ModeParams& p, const SpectrumOptions& opt, Eval&& eval) {
  NuSweep sw;
  std::vector<double> gx, gw;
  gauss_legendre(opt.order, gx, gw);
  const double cap = opt.nu_cap > 0 ? opt.nu_cap : default_nu_cap(p);
  const double centre = p.accel > 0 ? p.Omega0 / p.accel : 0.0;
  double peak = 0.0, last = 0.0, nu = 0.0;
  bool done = false;
  while (!done) {
    const double wdt = nu_panel_width(nu, std::abs(p.x0), p.L, p.mass);
    const double b = nu + wdt;
    std::vector<double> xs(opt.order), ws(opt.order);
    for (int j = 0; j < opt.order; ++j) {
      xs[j] = nu + 0.5 * wdt * (1.0 + gx[j]);
      ws[j] = 0.5 * wdt * gw[j];
    }
    const double pm = eval(xs);
    sw.nodes.insert(sw.nodes.end(), xs.begin(), xs.end());
    sw.weights.insert(sw.weights.end(), ws.begin(), ws.end());
    sw.edges.push_back(b);
    peak = std::max(peak, pm);
    last = pm;
    nu = b;
    if (nu > centre && peak > 0 && pm < opt.tail_tol * peak) done = true;
    if (!done && nu >= cap) {
      if (last > 1e-6 * peak) {
        std::ostringstream os;
        os << "spectrum tail above 1e-6 of peak at the frequency cap nu = " << cap;
        throw ConvergenceError(os.str());
      }
      done = true;
    }
  }
  return sw;
}

RindlerSpectrum finish_spectrum(const NuSweep& sw, double a, Region r, double mass, int order,
                                std::vector<cplx>&& pos, std::vector<cplx>&& neg) {
  RindlerSpectrum s;
  s.a_conv = a;
  s.region = r;
  s.mass = mass;
  s.nu_panels = PanelGrid(Eigen::Map<const Eigen::VectorXd>(sw.edges.data(), sw.edges.size()), order);
  const Eigen::Index n = s.nu_panels.size();
  s.omega_grid = a * s.nu_panels.nodes();
  s.weights = a * s.nu_panels.weights();
  s.amps = Eigen::Map<Eigen::VectorXcd>(pos.data(), n);
  s.amps_neg = Eigen::Map<Eigen::VectorXcd>(neg.data(), n);
  s.reduced.resize(n);
  for (Eigen::Index j = 0; j < n; ++j)
    s.reduced[j] = s.amps[j] / std::sqrt(-std::expm1(-2.0 * pi * s.nu_panels.nodes()[j]));
  return s;
}

}  // namespace

RindlerSpectrum rindler_spectrum(const WavePacket& psi, double a, const SpectrumOptions& opt) {
  if (!psi.rindler()) throw ParameterError("rindler_spectrum: packet must be an output mode");
  if (!(a > 0)) throw ParameterError("rindler_spectrum: a_conv must be > 0");
  const ModeParams& p = psi.params;
  const double sgn = region_sign(p.region);
  const double A = p.accel, m = p.mass;
  // keep only samples that carry weight
  const double vmax = psi.value.cwiseAbs().maxCoeff();
  std::vector<double> mx;
  std::vector<cplx> P, Q;
  for (Eigen::Index j = 0; j < psi.grid.size(); ++j) {
    if (std::abs(psi.value[j]) < 1e-18 * vmax && std::abs(psi.tderiv[j]) < 1e-18 * vmax * p.Omega0)
      continue;
    const double chi = psi.grid[j];
    mx.push_back(m * std::abs(chi));
    P.push_back(psi.weights[j] * std::conj(psi.value[j]) / (A * chi));
    Q.push_back(psi.weights[j] * cplx(0.0, -1.0) * std::conj(psi.tderiv[j]) / (A * chi));
  }
  const double isa = 1.0 / std::sqrt(a);
  std::vector<cplx> pos, neg;
  auto eval = [&](const std::vector<double>& nus) {
    double pm = 0.0;
    for (double nu : nus) {
      cplx s1 = 0.0, s2 = 0.0;
      for (size_t j = 0; j < mx.size(); ++j) {
        const double kr = rindler_kernel(nu, mx[j]);
        s1 += P[j] * kr;
        s2 += Q[j] * kr;
      }
      const cplx fp = (sgn * A * nu * s1 + s2) * isa;
      const cplx fn = (-sgn * A * nu * s1 + s2) * isa;
      pos.push_back(fp);
      neg.push_back(fn);
      pm = std::max({pm, std::abs(fp), std::abs(fn)});
    }
    return pm;
  };
  NuSweep sw = march_nu(p, opt, eval);
  return finish_spectrum(sw, a, p.region, m, opt.order, std::move(pos), std::move(neg));
}

MinkowskiSpectrum minkowski_spectrum(const WavePacket& phi, const MinkowskiOptions& opt) {
  if (phi.rindler()) throw ParameterError("minkowski_spectrum: packet must be inertial");
  const ModeParams& p = phi.params;
  const double m = p.mass;
  const double kmax = p.wavenumber() + opt.k_tail / p.L;
  const double tmax = std::asinh(kmax / m);
  const double X = phi.grid.cwiseAbs().maxCoeff();
  const double numax = opt.nu_max > 0 ? opt.nu_max : std::abs(p.x0) * (p.Omega0 + 20.0 / p.L) + 40.0;
  // θ panels sized to ~10 rad of phase each
  std::vector<double> half{0.0};
  while (half.back() < tmax) {
    const double t = half.back();
    const double w = std::min(0.25, 10.0 / (m * std::cosh(std::min(t + 0.25, tmax)) * X + numax));
    half.push_back(std::min(tmax, t + w));
  }
  Eigen::VectorXd edges(2 * half.size() - 1);
  const Eigen::Index h = static_cast<Eigen::Index>(half.size());
  for (Eigen::Index i = 0; i < h; ++i) {
    edges[h - 1 + i] = half[i];
    edges[h - 1 - i] = -half[i];
  }
  PanelGrid tg(edges, 16);

  const double vmax = phi.value.cwiseAbs().maxCoeff();
  std::vector<double> xs;
  std::vector<cplx> a1, a2;  // ω-independent pieces: w φ*, w (−i ∂_t φ*)
  const Eigen::VectorXcd dt = phi.time_derivative();
  for (Eigen::Index j = 0; j < phi.grid.size(); ++j) {
    if (std::abs(phi.value[j]) < 1e-18 * vmax) continue;
    xs.push_back(phi.grid[j]);
    a1.push_back(phi.weights[j] * std::conj(phi.value[j]));
    a2.push_back(phi.weights[j] * cplx(0.0, -1.0) * std::conj(dt[j]));
  }
  MinkowskiSpectrum s;
  const Eigen::Index n = tg.size();
  s.k_grid.resize(n);
  s.weights.resize(n);
  s.amps_pos.resize(n);
  s.amps_neg.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double th = tg.nodes()[i];
    const double k = m * std::sinh(th), om = m * std::cosh(th);
    s.k_grid[i] = k;
    s.weights[i] = om * tg.weights()[i];
    cplx p1 = 0.0, p2 = 0.0, n1 = 0.0, n2 = 0.0;
    for (size_t j = 0; j < xs.size(); ++j) {
      const cplx e = std::polar(1.0, k * xs[j]);
      p1 += a1[j] * e;
      p2 += a2[j] * e;
      n1 += a1[j] * std::conj(e);
      n2 += a2[j] * std::conj(e);
    }
    const double nrm = 1.0 / std::sqrt(4.0 * pi * om);
    s.amps_pos[i] = (om * p1 + p2) * nrm;
    s.amps_neg[i] = (-om * n1 + n2) * nrm;
  }
  return s;
}

MinkowskiSpectrum apply_zero_frequency_cutoff(const MinkowskiSpectrum& s) {
  MinkowskiSpectrum c = s;
  c.amps_neg.setZero();
  const double w = c.positive_weight();
  if (w > 0) c.amps_pos /= std::sqrt(w);
  return c;
}

RindlerSpectrum apply_zero_frequency_cutoff(const RindlerSpectrum& s) {
  RindlerSpectrum c = s;
  c.amps_neg.setZero();
  const double w = c.positive_weight();
  if (w > 0) {
    c.amps /= std::sqrt(w);
    c.reduced /= std::sqrt(w);
  }
  return c;
}

double fix_peak_phase(WavePacket& psi, RindlerSpectrum& spec) {
  Eigen::Index i;
  spec.amps.cwiseAbs().maxCoeff(&i);
  const double th = std::arg(spec.amps[i]);
  const cplx r = std::polar(1.0, -th);
  spec.amps *= r;
  spec.amps_neg *= r;
  spec.reduced *= r;
  // (e^{iθ}ψ, w) = e^{−iθ}(ψ, w)
  psi.value *= std::conj(r);
  psi.tderiv *= std::conj(r);
  return th;
}

ActiveMode build_active_output_mode(const WavePacket& input, double accel, double a,
                                    const SpectrumOptions& opt) {
  if (input.rindler()) throw ParameterError("build_active_output_mode: input must be inertial");
  if (!(accel > 0)) throw ParameterError("build_active_output_mode: accel must be > 0");
  ModeParams p = input.params;
  p.kind = ModeKind::active_output;
  p.accel = accel;
  validate(p);
  const double sgn = region_sign(p.region);
  const double m = p.mass;

  MinkowskiOptions mo;
  mo.nu_max = opt.nu_cap > 0 ? opt.nu_cap : default_nu_cap(p);
  const MinkowskiSpectrum ms = apply_zero_frequency_cutoff(minkowski_spectrum(input, mo));
  const MinkRindCoeff c{p.region, a, 0.0, Orientation::counter, m};

  // (φ, w_Ω) = ∫dk α_{Ωk} (φ, u_k),  (φ, w_Ω*) = −e^{−πΩ/a} ∫dk α*_{Ωk} (φ, u_k)
  std::vector<cplx> G, Gm;
  auto eval = [&](const std::vector<double>& nus) {
    double pm = 0.0;
    for (double nu : nus) {
      cplx s = 0.0, t = 0.0;
      for (Eigen::Index i = 0; i < ms.k_grid.size(); ++i) {
        const cplx al = mink_rindler_alpha(c, a * nu, ms.k_grid[i]);
        s += ms.weights[i] * al * ms.amps_pos[i];
        t += ms.weights[i] * std::conj(al) * ms.amps_pos[i];
      }
      G.push_back(s);
      Gm.push_back(-std::exp(-pi * nu) * t);
      pm = std::max(pm, std::abs(s));
    }
    return pm;
  };
  NuSweep sw = march_nu(p, opt, eval);
  const Eigen::Index nn = static_cast<Eigen::Index>(sw.nodes.size());
  double norm2 = 0.0;
  for (Eigen::Index j = 0; j < nn; ++j) norm2 += a * sw.weights[j] * std::norm(G[j]);
  if (norm2 < 1e-8) throw std::domain_error("build_active_output_mode: vanishing projection");
  const double alpha = std::sqrt(norm2);
  cplx beta = 0.0;
  for (Eigen::Index j = 0; j < nn; ++j) beta += a * sw.weights[j] * G[j] * Gm[j];
  beta /= alpha;

  std::vector<cplx> pos(nn), neg(nn, cplx(0.0));
  for (Eigen::Index j = 0; j < nn; ++j) pos[j] = G[j] / alpha;
  RindlerSpectrum spec = finish_spectrum(sw, a, p.region, m, opt.order, std::move(pos), std::move(neg));

  // ψ(χ) = ∫dΩ (w_Ω, φ) w_Ω(χ) / α on the input's slice grid
  WavePacket w;
  w.params = p;
  w.panels = input.panels;
  w.grid = input.grid;
  w.weights = input.weights;
  const Eigen::Index n = w.grid.size();
  w.value = Eigen::VectorXcd::Zero(n);
  w.tderiv = Eigen::VectorXcd::Zero(n);
  const double isa = 1.0 / std::sqrt(a);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mx = m * std::abs(w.grid[j]);
    cplx v = 0.0, d = 0.0;
    for (Eigen::Index i = 0; i < nn; ++i) {
      const double nu = sw.nodes[i];
      const cplx coef = a * sw.weights[i] * std::conj(spec.amps[i]) * (isa * rindler_kernel(nu, mx));
      v += coef;
      d += coef * cplx(0.0, -sgn * accel * nu);
    }
    w.value[j] = v;
    w.tderiv[j] = d;
  }
  // ψ → e^{iθ}ψ takes both overlaps to e^{−iθ}(·)
  const cplx rot = std::polar(1.0, -fix_peak_phase(w, spec));
  return {std::move(w), std::move(spec), alpha * rot, beta * rot};
}

void write_columns(std::ostream& os, const WavePacket& p) {
  os.precision(17);
  os << "# x re im dt_re dt_im\n";
  for (Eigen::Index j = 0; j < p.grid.size(); ++j)
    os << p.grid[j] << ' ' << p.value[j].real() << ' ' << p.value[j].imag() << ' '
       << p.tderiv[j].real() << ' ' << p.tderiv[j].imag() << '\n';
}

void write_columns(std::ostream& os, const RindlerSpectrum& s) {
  os.precision(17);
  os << "# a_conv " << s.a_conv << "\n# Omega re im neg_re neg_im\n";
  for (Eigen::Index j = 0; j < s.omega_grid.size(); ++j)
    os << s.omega_grid[j] << ' ' << s.amps[j].real() << ' ' << s.amps[j].imag() << ' '
       << s.amps_neg[j].real() << ' ' << s.amps_neg[j].imag() << '\n';
}

}  // namespace rgc
