#include "rgc/noise.hpp"

#include <Eigen/Eigenvalues>
#include <set>
#include <sstream>

namespace rgc {

namespace {

constexpr int inner_order = 20;
constexpr int outer_order = 16;
constexpr double outer_width = 0.2;

struct GL {
  std::vector<double> x, w;
  explicit GL(int n) { gauss_legendre(n, x, w); }
};

const GL& inner_rule() {
  static const GL g(inner_order);
  return g;
}

// exponent of the weight multiplying 2 R_I R_II^(*) in rotated variables
double term_exponent(Orientation o, int term, double u, double v, int s) {
  if (o == Orientation::counter) {
    if (term == 0) return -0.5 * pi * v + 0.5 * pi * u * (1 - s) - 0.5 * pi * std::abs(u);
    return -0.5 * pi * v * (1 + s);
  }
  if (term == 0) return -pi * v + 0.5 * pi * u - 0.5 * pi * v * s;
  return -0.5 * pi * (u * s + std::abs(u));
}

bool outer_is_u(Orientation o, int term) { return (o == Orientation::counter) == (term == 0); }
bool conj_second(int term) { return term == 1; }

double sign_of(double D) { return D > 0 ? 1.0 : -1.0; }

}  // namespace

void validate(const Geometry& g) {
  std::ostringstream os;
  if (!(g.accel_I > 0) || !(g.accel_II > 0)) os << "accelerations must be > 0; ";
  if (!(g.L > 0)) os << "L must be > 0; ";
  if (os.str().empty()) {
    if (g.orientation == Orientation::counter && g.D < 0 &&
        !(1.0 / g.accel_I + 1.0 / g.accel_II + g.D > 3.0 * g.L))
      os << "counter geometry with D = " << g.D << " brings the packets within 3L";
    if (g.orientation == Orientation::parallel &&
        !(std::abs(g.D + 1.0 / g.accel_I - 1.0 / g.accel_II) > 3.0 * g.L))
      os << "parallel geometry with D = " << g.D << " overlaps the packets";
  }
  if (!os.str().empty()) throw ParameterError("geometry: " + os.str());
}

IntegrationResult<double> unruh_diagonal(const RindlerSpectrum& spec) {
  IntegrationResult<double> r;
  double via_reduced = 0.0, via_amps = 0.0;
  for (Eigen::Index j = 0; j < spec.omega_grid.size(); ++j) {
    const double nu = spec.omega_grid[j] / spec.a_conv;
    via_reduced += spec.weights[j] * 2.0 * std::norm(spec.reduced[j]) * std::exp(-2.0 * pi * nu);
    via_amps += spec.weights[j] * std::norm(spec.amps[j]) * std::exp(-pi * nu) / std::sinh(pi * nu);
  }
  r.value = via_reduced;
  r.error_estimate = std::abs(via_reduced - via_amps) + 1e-15 * via_reduced;
  r.evaluations = spec.omega_grid.size();
  r.converged = std::isfinite(r.value);
  return r;
}

CrossTermEngine::CrossTermEngine(const RindlerSpectrum& spec_I, const RindlerSpectrum& spec_II,
                                 Orientation o, double mass, const NoiseOptions& opt)
    : I_(spec_I), II_(spec_II), orient_(o), mass_(mass), a_(spec_I.a_conv), opt_(opt) {
  if (std::abs(spec_I.a_conv - spec_II.a_conv) > 1e-14 * a_)
    throw ParameterError("cross terms: spectra use different a_conv");
  if (!(mass > 0)) throw ParameterError("cross terms: mass must be > 0");
}

cplx CrossTermEngine::overlap(double t, bool ou, bool cj, int term, int sgn) const {
  const double nI = I_.nu_panels.upper(), nII = II_.nu_panels.upper();
  double lo, hi;
  std::vector<double> br;
  if (ou) {
    lo = std::abs(t);
    hi = std::min(2 * nI - t, 2 * nII + t);
  } else {
    lo = std::max(-t, t - 2 * nII);
    hi = std::min(t, 2 * nI - t);
  }
  if (!(hi > lo)) return 0.0;
  auto uv = [&](double r) { return ou ? std::pair{t, r} : std::pair{r, t}; };
  {
    const auto [u0, v0] = uv(lo);
    const auto [u1, v1] = uv(hi);
    if (std::max(term_exponent(orient_, term, u0, v0, sgn),
                 term_exponent(orient_, term, u1, v1, sgn)) < opt_.cut_log)
      return 0.0;
  }
  br.push_back(lo);
  br.push_back(hi);
  // images of the spectral panel edges on this line
  for (double e : I_.nu_panels.edges()) br.push_back(2 * e - t);
  for (double e : II_.nu_panels.edges()) br.push_back(ou ? 2 * e + t : t - 2 * e);
  std::sort(br.begin(), br.end());
  const GL& g = inner_rule();
  cplx sum = 0.0;
  double prev = lo;
  auto piece = [&](double a, double b) {
    const int n = std::max(1, static_cast<int>(std::ceil(b - a)));
    for (int p = 0; p < n; ++p) {
      const double pa = a + (b - a) * p / n, pb = a + (b - a) * (p + 1) / n;
      const double c = 0.5 * (pa + pb), h = 0.5 * (pb - pa);
      for (int j = 0; j < inner_order; ++j) {
        const auto [u, v] = uv(c + h * g.x[j]);
        const double ex = term_exponent(orient_, term, u, v, sgn);
        if (ex < opt_.cut_log) continue;
        const double nu = 0.5 * (v + u), xi = 0.5 * (v - u);
        const cplx r1 = I_.nu_panels.interpolate(I_.reduced, nu);
        cplx r2 = II_.nu_panels.interpolate(II_.reduced, xi);
        if (cj) r2 = std::conj(r2);
        sum += h * g.w[j] * 2.0 * r1 * r2 * std::exp(ex);
      }
    }
  };
  for (double b : br) {
    if (b <= prev) continue;
    if (b >= hi) break;
    piece(prev, b);
    prev = b;
  }
  piece(prev, hi);
  return sum;
}

const CrossTermEngine::Line& CrossTermEngine::line(int term, int sgn) {
  Line& L = lines_[term][sgn > 0 ? 1 : 0];
  if (L.ready) return L;
  const double nI = I_.nu_panels.upper(), nII = II_.nu_panels.upper();
  const bool ou = outer_is_u(orient_, term);
  std::set<double> cuts;
  double lo, hi;
  if (ou) {
    lo = -2 * nII;
    hi = 2 * nI;
    cuts = {lo, 0.0, nI - nII, hi};
  } else {
    lo = 0.0;
    hi = nI + nII;
    cuts = {lo, nI, nII, hi};
  }
  std::vector<double> edges;
  double prev = lo;
  edges.push_back(lo);
  for (double c : cuts) {
    if (c <= prev || c > hi) continue;
    const int n = std::max(1, static_cast<int>(std::ceil((c - prev) / outer_width)));
    for (int i = 1; i <= n; ++i) edges.push_back(i == n ? c : prev + (c - prev) * i / n);
    prev = c;
  }
  const PanelGrid pg(Eigen::Map<Eigen::VectorXd>(edges.data(), edges.size()), outer_order);
  L.t = pg.nodes();
  L.w = pg.weights();
  L.g.resize(L.t.size());
  for (Eigen::Index j = 0; j < L.t.size(); ++j)
    L.g[j] = overlap(L.t[j], ou, conj_second(term), term, sgn);
  L.ready = true;
  return L;
}

CrossTerms CrossTermEngine::limit() const {
  CrossTerms r;
  const bool par = orient_ == Orientation::parallel;
  cplx s = 0.0;
  double mag = 0.0;
  for (Eigen::Index j = 0; j < I_.omega_grid.size(); ++j) {
    const double nu = I_.nu_panels.nodes()[j];
    const cplx r2 = II_.nu_panels.interpolate(II_.reduced, nu);
    const cplx f = par ? 2.0 * I_.reduced[j] * std::conj(r2)
                       : 2.0 * I_.reduced[j] * r2 * std::exp(-pi * nu);
    s += I_.weights[j] * f;
    mag += I_.weights[j] * std::abs(f);
  }
  r.plus = s;
  r.minus = par ? -s : s;
  r.error_estimate = 1e-14 * mag;
  return r;
}

CrossTerms CrossTermEngine::operator()(double D) {
  if (!std::isfinite(D)) throw ParameterError("cross terms: D must be finite");
  if (std::abs(D) < opt_.d_eps / mass_) return limit();
  const int s = static_cast<int>(sign_of(D));
  const double x = mass_ * std::abs(D);
  cplx T[2];
  double floor = 0.0;
  for (int term = 0; term < 2; ++term) {
    const Line& L = line(term, s);
    cplx acc = 0.0;
    for (Eigen::Index j = 0; j < L.t.size(); ++j) {
      if (L.g[j] == cplx(0.0)) continue;
      const cplx c = L.w[j] * bessel_k_imag_scaled(L.t[j], x) * L.g[j];
      acc += c;
      floor += std::abs(c);
    }
    T[term] = acc;
  }
  const double pref = a_ / (2.0 * pi);
  CrossTerms r;
  r.plus = pref * (T[0] + T[1]);
  r.minus = pref * (T[0] - T[1]);
  // cancellation floor of the oscillatory sums
  r.error_estimate = pref * floor * 1e-14;
  r.converged = std::isfinite(r.plus.real()) && std::isfinite(r.minus.real());
  return r;
}

CrossTerms cross_counter(const RindlerSpectrum& a, const RindlerSpectrum& b, const Geometry& g,
                         double mass, const NoiseOptions& opt) {
  if (g.orientation != Orientation::counter) throw ParameterError("cross_counter: orientation");
  CrossTermEngine e(a, b, Orientation::counter, mass, opt);
  return e(g.D);
}

CrossTerms cross_parallel(const RindlerSpectrum& a, const RindlerSpectrum& b, const Geometry& g,
                          double mass, const NoiseOptions& opt) {
  if (g.orientation != Orientation::parallel) throw ParameterError("cross_parallel: orientation");
  CrossTermEngine e(a, b, Orientation::parallel, mass, opt);
  return e(g.D);
}

CrossTerms cross_terms(const RindlerSpectrum& a, const RindlerSpectrum& b, const Geometry& g,
                       double mass, const NoiseOptions& opt) {
  return g.orientation == Orientation::counter ? cross_counter(a, b, g, mass, opt)
                                               : cross_parallel(a, b, g, mass, opt);
}

double uncertainty_margin(const Eigen::Matrix4d& sigma) {
  Eigen::Matrix4cd h = sigma.cast<cplx>();
  const cplx i(0.0, 1.0);
  for (int k = 0; k < 4; k += 2) {
    h(k, k + 1) += i;
    h(k + 1, k) -= i;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace rgc
