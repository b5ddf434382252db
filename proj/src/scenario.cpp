#include "rgc/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <boost/property_tree/info_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace pt = boost::property_tree;
namespace fs = std::filesystem;

namespace rgc {

std::vector<double> SweepAxis::values() const {
  std::vector<double> v;
  if (points == 1) return {min};
  for (int i = 0; i < points; ++i) {
    const double t = double(i) / (points - 1);
    v.push_back(log_scale ? min * std::pow(max / min, t) : min + (max - min) * t);
  }
  v.back() = max;
  return v;
}

namespace {

const std::set<std::string> axis_names = {"accel", "accel_I", "accel_II", "D", "L",
                                          "Omega0", "mass", "r", "n"};

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError(path + ": " + msg);
}

double get_num(const pt::ptree& t, const std::string& key, const std::string& path) {
  const std::string raw = t.get_value<std::string>();
  try {
    size_t used = 0;
    const double v = std::stod(raw, &used);
    if (used != raw.size()) fail(path + key, "trailing characters in '" + raw + "'");
    return v;
  } catch (const std::invalid_argument&) {
    fail(path + key, "expected a number, got '" + raw + "'");
  } catch (const std::out_of_range&) {
    fail(path + key, "number out of range: '" + raw + "'");
  }
}

void check_keys(const pt::ptree& t, const std::set<std::string>& allowed, const std::string& path) {
  for (const auto& [k, v] : t) {
    (void)v;
    if (!allowed.count(k)) fail(path + k, "unknown key");
  }
}

void read_slot(const pt::ptree& t, SlotParams& s, const std::string& path) {
  check_keys(t, {"L", "Omega0"}, path);
  for (const auto& [k, v] : t) {
    if (k == "L") s.L = get_num(v, k, path);
    if (k == "Omega0") s.Omega0 = get_num(v, k, path);
  }
}

}  // namespace

ScenarioConfig parse_config(const std::string& text, const std::string& origin) {
  pt::ptree root;
  std::istringstream is(text);
  try {
    pt::read_info(is, root);
  } catch (const pt::info_parser_error& e) {
    std::ostringstream os;
    os << origin << ":" << e.line() << ": " << e.message();
    throw ConfigError(os.str());
  }
  check_keys(root,
             {"scenario", "description", "geometry", "modes", "input", "output_modes", "sweep",
              "tolerances", "a_conv", "log_base", "capacity_base", "mbar", "output_path", "cache_dir"},
             "");
  ScenarioConfig c;
  if (auto s = root.get_optional<std::string>("scenario")) {
    if (*s != "custom") c = preset(*s);
    c.scenario = *s;
  }
  for (const auto& [k, v] : root) {
    if (k == "description") c.description = v.get_value<std::string>();
    else if (k == "a_conv") c.a_conv = get_num(v, k, "");
    else if (k == "mbar") c.mbar = get_num(v, k, "");
    else if (k == "output_path") c.output_path = v.get_value<std::string>();
    else if (k == "cache_dir") c.cache_dir = v.get_value<std::string>();
    else if (k == "output_modes") {
      const auto s = v.get_value<std::string>();
      if (s == "passive") c.output = OutputKind::passive;
      else if (s == "active") c.output = OutputKind::active;
      else fail("output_modes", "expected passive or active, got '" + s + "'");
    } else if (k == "log_base" || k == "capacity_base") {
      const auto s = v.get_value<std::string>();
      double b;
      if (s == "e") b = std::exp(1.0);
      else if (s == "2") b = 2.0;
      else fail(k, "expected 2 or e, got '" + s + "'");
      (k == "log_base" ? c.log_base : c.capacity_base) = b;
    } else if (k == "geometry") {
      check_keys(v, {"orientation", "D", "accel_I", "accel_II", "fixed_separation"}, "geometry.");
      for (const auto& [g, w] : v) {
        if (g == "orientation") {
          const auto s = w.get_value<std::string>();
          if (s == "counter") c.geometry.orientation = Orientation::counter;
          else if (s == "parallel") c.geometry.orientation = Orientation::parallel;
          else fail("geometry.orientation", "expected counter or parallel, got '" + s + "'");
        } else if (g == "D") c.geometry.D = get_num(w, g, "geometry.");
        else if (g == "accel_I") c.geometry.accel_I = get_num(w, g, "geometry.");
        else if (g == "accel_II") c.geometry.accel_II = get_num(w, g, "geometry.");
        else if (g == "fixed_separation") c.fixed_separation = get_num(w, g, "geometry.");
      }
    } else if (k == "modes") {
      check_keys(v, {"L", "Omega0", "mass", "I", "II"}, "modes.");
      for (const auto& [g, w] : v) {
        if (g == "mass") c.mass = get_num(w, g, "modes.");
        else if (g == "L") c.slot_I.L = c.slot_II.L = get_num(w, g, "modes.");
        else if (g == "Omega0") c.slot_I.Omega0 = c.slot_II.Omega0 = get_num(w, g, "modes.");
      }
      if (auto s = v.get_child_optional("I")) read_slot(*s, c.slot_I, "modes.I.");
      if (auto s = v.get_child_optional("II")) read_slot(*s, c.slot_II, "modes.II.");
    } else if (k == "input") {
      check_keys(v, {"state", "r", "n", "d"}, "input.");
      for (const auto& [g, w] : v) {
        if (g == "state") {
          const auto s = w.get_value<std::string>();
          if (s == "vacuum") c.input = InputKind::vacuum;
          else if (s == "squeezed_thermal") c.input = InputKind::squeezed_thermal;
          else if (s == "coherent") c.input = InputKind::coherent;
          else fail("input.state", "expected vacuum, squeezed_thermal or coherent, got '" + s + "'");
        } else if (g == "r") c.r = get_num(w, g, "input.");
        else if (g == "n") c.n = get_num(w, g, "input.");
        else if (g == "d") {
          std::istringstream ds(w.get_value<std::string>());
          for (int i = 0; i < 4; ++i)
            if (!(ds >> c.displacement[i])) fail("input.d", "expected four numbers");
        }
      }
    } else if (k == "sweep") {
      c.sweep.clear();
      int idx = 0;
      for (const auto& [g, w] : v) {
        const std::string path = "sweep.axis[" + std::to_string(idx++) + "].";
        if (g != "axis") fail("sweep." + g, "unknown key (expected axis)");
        check_keys(w, {"name", "min", "max", "points", "scale"}, path);
        SweepAxis a;
        a.name = w.get<std::string>("name", "");
        if (!axis_names.count(a.name)) fail(path + "name", "unknown sweep parameter '" + a.name + "'");
        for (const auto& [h, x] : w) {
          if (h == "min") a.min = get_num(x, h, path);
          else if (h == "max") a.max = get_num(x, h, path);
          else if (h == "points") {
            const double p = get_num(x, h, path);
            if (p < 1 || p != std::floor(p)) fail(path + "points", "must be a positive integer");
            a.points = int(p);
          } else if (h == "scale") {
            const auto s = x.get_value<std::string>();
            if (s != "lin" && s != "log") fail(path + "scale", "expected lin or log");
            a.log_scale = s == "log";
          }
        }
        if (!w.get_child_optional("max")) a.max = a.min;
        c.sweep.push_back(a);
      }
    } else if (k == "tolerances") {
      check_keys(v, {"tail_tol", "d_eps"}, "tolerances.");
      for (const auto& [g, w] : v) {
        if (g == "tail_tol") c.tail_tol = get_num(w, g, "tolerances.");
        if (g == "d_eps") c.d_eps = get_num(w, g, "tolerances.");
      }
    }
  }
  validate(c);
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str(), path);
}

void validate(const ScenarioConfig& c) {
  std::set<std::string> seen;
  for (size_t i = 0; i < c.sweep.size(); ++i) {
    const auto& a = c.sweep[i];
    const std::string path = "sweep.axis[" + std::to_string(i) + "].";
    if (!axis_names.count(a.name)) fail(path + "name", "unknown sweep parameter '" + a.name + "'");
    if (!seen.insert(a.name).second) fail(path + "name", "duplicate axis '" + a.name + "'");
    if (a.points < 1) fail(path + "points", "must be >= 1");
    if (a.log_scale && !(a.min > 0 && a.max > 0)) fail(path + "scale", "log scale needs positive bounds");
  }
  if (seen.count("accel") && (seen.count("accel_I") || seen.count("accel_II")))
    fail("sweep", "accel cannot be combined with accel_I/accel_II");
  if (c.fixed_separation && seen.count("D")) fail("geometry.fixed_separation", "conflicts with a D axis");
  if (!(c.a_conv > 0)) fail("a_conv", "must be > 0");
  if (!(c.tail_tol > 0 && c.tail_tol < 1e-3)) fail("tolerances.tail_tol", "must be in (0, 1e-3)");
  if (!(c.d_eps > 0)) fail("tolerances.d_eps", "must be > 0");
  if (!(c.mass > 0)) fail("modes.mass", "must be > 0");
  if (!(c.mbar >= 0)) fail("mbar", "must be >= 0");
  if (c.r < 0 || c.n < 0) fail("input", "r and n must be >= 0");
  // every expanded point must describe valid modes and geometry
  for (const auto& p : expand(c)) {
    try {
      Geometry g = c.geometry;
      g.D = p.D;
      g.accel_I = p.accel_I;
      g.accel_II = p.accel_II;
      g.L = std::max(p.L_I, p.L_II);
      rgc::validate(g);
      set_warning_handler([](const std::string&) {});
      make_mode(Region::I, ModeKind::passive_output, p.accel_I, p.L_I, p.mass, p.Omega0_I);
      make_mode(Region::I, ModeKind::passive_output, p.accel_II, p.L_II, p.mass, p.Omega0_II);
      set_warning_handler(nullptr);
    } catch (const ParameterError& e) {
      set_warning_handler(nullptr);
      std::ostringstream os;
      os << "point (accel_I=" << p.accel_I << ", accel_II=" << p.accel_II << ", D=" << p.D
         << ", L=" << p.L_I << ", Omega0=" << p.Omega0_I << "): " << e.what();
      fail("sweep", os.str());
    }
  }
}

std::vector<PointSpec> expand(const ScenarioConfig& c) {
  const double om_default = std::sqrt(25.0 + c.mass * c.mass);
  PointSpec base{c.geometry.accel_I, c.geometry.accel_II, c.geometry.D,
                 c.slot_I.L, c.slot_II.L,
                 c.slot_I.Omega0.value_or(om_default), c.slot_II.Omega0.value_or(om_default),
                 c.mass, c.r, c.n};
  std::vector<PointSpec> pts{base};
  for (const auto& a : c.sweep) {
    std::vector<PointSpec> next;
    for (const auto& p : pts)
      for (double v : a.values()) {
        PointSpec q = p;
        if (a.name == "accel") q.accel_I = q.accel_II = v;
        else if (a.name == "accel_I") q.accel_I = v;
        else if (a.name == "accel_II") q.accel_II = v;
        else if (a.name == "D") q.D = v;
        else if (a.name == "L") q.L_I = q.L_II = v;
        else if (a.name == "Omega0") q.Omega0_I = q.Omega0_II = v;
        else if (a.name == "mass") q.mass = v;
        else if (a.name == "r") q.r = v;
        else if (a.name == "n") q.n = v;
        next.push_back(q);
      }
    pts = std::move(next);
  }
  if (c.fixed_separation)
    for (auto& p : pts) p.D = *c.fixed_separation - 1.0 / p.accel_I - 1.0 / p.accel_II;
  // a default Ω₀ follows the mass when the mass is swept
  const bool om_axis = std::any_of(c.sweep.begin(), c.sweep.end(), [](auto& a) { return a.name == "Omega0"; });
  if (!om_axis)
    for (auto& p : pts) {
      if (!c.slot_I.Omega0) p.Omega0_I = std::sqrt(25.0 + p.mass * p.mass);
      if (!c.slot_II.Omega0) p.Omega0_II = std::sqrt(25.0 + p.mass * p.mass);
    }
  return pts;
}

// ---------------------------------------------------------------- presets

namespace {

struct PresetDef {
  std::string name, title, text;
};

const std::vector<PresetDef>& preset_defs() {
  static const std::vector<PresetDef> d = {
      {"fig4", "vacuum negativity map",
       "log-negativity of the vacuum vs (accel_I, accel_II) in [0.02, 0.1]^2, 6x6, D=0, L=2, m=0.1"},
      {"fig5", "negativity vs mode shape",
       "log-negativity vs (L, Omega0) at accel=0.1, D=0; L in [1.5, 4], Omega0 in [3, 8]"},
      {"fig6", "negativity vs distance",
       "log-negativity vs D in [-2, 20] at accel_I=accel_II=0.1, L=2, m=0.1 (upper and lower panels)"},
      {"fig7", "fixed separation",
       "log-negativity vs accel in [0.08, 0.24] with D = 20 - 2/accel (fixed mode separation 20)"},
      {"fig8", "fidelity map",
       "fidelity of squeezed thermal inputs vs (r in [0, 1.5], n in [0, 1]) at accel=0.1, D=0"},
      {"fig9", "fidelity vs acceleration",
       "fidelity vs accel in [0.02, 0.2] for r in {0, 0.5, 1} and n in {0, 0.5}, D=0"},
      {"fig10", "single-mode channel",
       "single-mode transmissivity tau and noise (1-tau)(2nbar+1) vs accel in [0.02, 0.2]"},
      {"fig12", "capacity bounds",
       "classical (mbar=1) and quantum capacity lower bounds vs accel in [0.02, 0.2]"},
  };
  return d;
}

SweepAxis axis(const std::string& n, double a, double b, int p, bool lg = false) {
  SweepAxis x;
  x.name = n;
  x.min = a;
  x.max = b;
  x.points = p;
  x.log_scale = lg;
  return x;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> n = [] {
    std::vector<std::string> v;
    for (const auto& d : preset_defs()) v.push_back(d.name);
    return v;
  }();
  return n;
}

ScenarioConfig preset(const std::string& name) {
  ScenarioConfig c;
  c.scenario = name;
  bool found = false;
  for (const auto& d : preset_defs())
    if (d.name == name) {
      c.description = d.text;
      found = true;
    }
  if (!found) throw ConfigError("scenario: unknown preset '" + name + "'");
  c.output_path = name + ".csv";
  if (name == "fig4") {
    c.sweep = {axis("accel_I", 0.02, 0.1, 6), axis("accel_II", 0.02, 0.1, 6)};
  } else if (name == "fig5") {
    c.sweep = {axis("L", 1.5, 4.0, 6), axis("Omega0", 3.0, 8.0, 6)};
  } else if (name == "fig6") {
    c.sweep = {axis("D", -2.0, 20.0, 23)};
  } else if (name == "fig7") {
    c.fixed_separation = 20.0;
    c.sweep = {axis("accel", 0.08, 0.24, 9)};
  } else if (name == "fig8") {
    c.input = InputKind::squeezed_thermal;
    c.sweep = {axis("r", 0.0, 1.5, 7), axis("n", 0.0, 1.0, 5)};
  } else if (name == "fig9") {
    c.input = InputKind::squeezed_thermal;
    c.sweep = {axis("accel", 0.02, 0.2, 10), axis("r", 0.0, 1.0, 3), axis("n", 0.0, 0.5, 2)};
  } else if (name == "fig10" || name == "fig12") {
    c.sweep = {axis("accel", 0.02, 0.2, 10)};
  }
  return c;
}

std::string list_scenarios(const ScenarioConfig* custom) {
  std::ostringstream os;
  os << "name\ttitle\tparameters\n";
  for (const auto& d : preset_defs()) os << d.name << '\t' << d.title << '\t' << d.text << '\n';
  if (custom) {
    os << "custom\t-\t" << (custom->description.empty() ? "user configuration" : custom->description);
    os << " (" << expand(*custom).size() << " points)\n";
  }
  return os.str();
}

// ------------------------------------------------------------------ runs

namespace {

struct Group {
  std::vector<size_t> members;  // indices into the point list
};

std::string group_key(const CacheKey& k) {
  // everything but D identifies the spectra
  const auto a = k.text.find(";D=");
  const auto b = k.text.find(';', a + 1);
  return k.text.substr(0, a) + k.text.substr(b);
}

struct SlotModes {
  RindlerSpectrum spec;
  cplx alpha, beta;
};

SlotModes build_slot(const ScenarioConfig& c, Region r, double accel, double L, double Om, double m) {
  SpectrumOptions so;
  so.tail_tol = c.tail_tol;
  const ModeParams pin = make_mode(r, ModeKind::inertial, accel, L, m, Om);
  const WavePacket phi = build_input_mode(pin);
  if (c.output == OutputKind::active) {
    ActiveMode am = build_active_output_mode(phi, accel, c.a_conv, so);
    return {std::move(am.spectrum), am.alpha, am.beta};
  }
  const WavePacket psi = build_passive_output_mode(make_mode(r, ModeKind::passive_output, accel, L, m, Om));
  RindlerSpectrum spec = apply_zero_frequency_cutoff(rindler_spectrum(psi, c.a_conv, so));
  MinkowskiOptions mo;
  mo.nu_max = spec.nu_panels.upper();
  const MinkowskiSpectrum ms = apply_zero_frequency_cutoff(minkowski_spectrum(phi, mo));
  const MinkRindCoeff coeff{r, c.a_conv, 0.0, c.geometry.orientation, m};
  const OverlapPair o = passive_overlap(ms, spec, coeff);
  return {std::move(spec), o.alpha, o.beta};
}

void compute_group(const ScenarioConfig& c, const std::vector<PointSpec>& pts, const Group& g,
                   std::vector<PointResult>& out) {
  const PointSpec& p = pts[g.members.front()];
  const bool par = c.geometry.orientation == Orientation::parallel;
  // slot II is the mirror wedge for counter acceleration, another right wedge otherwise
  const SlotModes I = build_slot(c, Region::I, p.accel_I, p.L_I, p.Omega0_I, p.mass);
  const SlotModes II = build_slot(c, par ? Region::I : Region::II, p.accel_II, p.L_II, p.Omega0_II, p.mass);
  const auto nI = unruh_diagonal(I.spec), nII = unruh_diagonal(II.spec);
  NoiseOptions no;
  no.d_eps = c.d_eps;
  CrossTermEngine engine(I.spec, II.spec, c.geometry.orientation, p.mass, no);
  for (size_t idx : g.members) {
    ChannelPhysics ph;
    ph.overlaps = {I.alpha, I.beta, II.alpha, II.beta};
    ph.n_I = nI.value;
    ph.n_I_err = nI.error_estimate;
    ph.n_II = nII.value;
    ph.n_II_err = nII.error_estimate;
    ph.cross = engine(pts[idx].D);
    out[idx].phys = ph;
  }
}

void finish_point(const ScenarioConfig& c, PointResult& r) {
  const ChannelPhysics& ph = r.phys;
  const auto& o = ph.overlaps;
  r.converged = ph.cross.converged;
  r.bound_ok = 2.0 * std::norm(o.beta_I) <= ph.n_I * (1.0 + 1e-9) + 1e-300 &&
               2.0 * std::norm(o.beta_II) <= ph.n_II * (1.0 + 1e-9) + 1e-300;
  ChannelMatrices<double> ch;
  ch.M = build_M(o);
  ch.N = build_N(ph.n_I, ph.n_II, ph.cross.plus, ph.cross.minus, ch.M).matrix;
  r.cp_margin = complete_positivity_margin(ch);
  if (r.cp_margin < -1e-8) throw InconsistencyError("channel is not completely positive");

  GaussianState<double> in;
  if (c.input == InputKind::squeezed_thermal) in = squeezed_thermal_state(r.spec.r, r.spec.n);
  if (c.input == InputKind::coherent) in = coherent_state<double>(c.displacement);
  const GaussianState<double> out = apply_two_mode(ch, in);
  NegativityResult ng;
  if (c.input == InputKind::squeezed_thermal)
    ng = log_negativity(out, c.log_base);
  else  // covariance is the vacuum output for vacuum and coherent inputs
    ng = vacuum_output_negativity(ph.n_I, ph.n_II, ph.cross.plus, ph.cross.minus, c.log_base);
  r.neg = ng.value;
  r.neg_eig = ng.min_pt_symplectic_eig;
  if (c.input == InputKind::coherent) {
    r.fidelity = r.fidelity_approx = std::nan("");
  } else {
    r.fidelity = uhlmann_fidelity(in.cov, out.cov);
    r.fidelity_approx = uhlmann_fidelity(in.cov, apply_two_mode_approx(ch.M, in).cov);
  }
  r.single = canonical_form(reduce_single_mode(ch));
  r.c_lb = classical_capacity_lb(r.single, c.mbar, c.capacity_base);
  r.q_lb = quantum_capacity_lb(r.single, c.capacity_base);
  if (!r.bound_ok) r.status = "bound 2|beta|^2 <= N violated";
  if (!r.converged && r.status == "ok") r.status = "not converged";
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(16) << v;
  return os.str();
}

}  // namespace

std::string csv_header() {
  return "accel_I,accel_II,D,L_I,L_II,Omega0_I,Omega0_II,mass,r,n,"
         "re_alpha_I,im_alpha_I,re_beta_I,im_beta_I,re_alpha_II,im_alpha_II,re_beta_II,im_beta_II,"
         "N_I,N_I_err,N_II,N_II_err,re_N_plus,im_N_plus,re_N_minus,im_N_minus,N_cross_err,"
         "log_negativity,min_pt_symplectic_eig,fidelity,fidelity_approx,tau,nbar,noise_coeff,rank,"
         "C_lb,Q_lb,cp_margin,bound_ok,converged,status";
}

std::string csv_row(const PointResult& r) {
  std::ostringstream os;
  const auto& s = r.spec;
  const auto& o = r.phys.overlaps;
  const auto& x = r.phys.cross;
  for (double v : {s.accel_I, s.accel_II, s.D, s.L_I, s.L_II, s.Omega0_I, s.Omega0_II, s.mass, s.r, s.n,
                   o.alpha_I.real(), o.alpha_I.imag(), o.beta_I.real(), o.beta_I.imag(),
                   o.alpha_II.real(), o.alpha_II.imag(), o.beta_II.real(), o.beta_II.imag(),
                   r.phys.n_I, r.phys.n_I_err, r.phys.n_II, r.phys.n_II_err, x.plus.real(),
                   x.plus.imag(), x.minus.real(), x.minus.imag(), x.error_estimate, r.neg,
                   r.neg_eig, r.fidelity, r.fidelity_approx, r.single.tau, r.single.nbar,
                   r.single.noise()})
    os << fmt(v) << ',';
  os << r.single.rank << ',';
  for (double v : {r.c_lb, r.q_lb, r.cp_margin}) os << fmt(v) << ',';
  os << int(r.bound_ok) << ',' << int(r.converged) << ',' << r.status;
  return os.str();
}

RunSummary run_scenario(const ScenarioConfig& cfg, const RunOptions& opt) {
  validate(cfg);
  // each distinct warning once per run
  std::set<std::string> warned;
  std::mutex warn_mutex;
  set_warning_handler([&](const std::string& m) {
    std::lock_guard<std::mutex> lk(warn_mutex);
    if (warned.insert(m).second) std::cerr << "warning: " << m << '\n';
  });
  struct Restore {
    ~Restore() { set_warning_handler(nullptr); }
  } restore;
  const std::vector<PointSpec> pts = expand(cfg);
  std::vector<PointResult> rows(pts.size());
  std::vector<CacheKey> keys;
  std::string cache_dir = cfg.cache_dir.empty() ? default_cache_dir() : cfg.cache_dir;
  bool use_cache = opt.use_cache;

  // cached channel physics first; the rest grouped by shared spectra
  std::map<std::string, Group> groups;
  for (size_t i = 0; i < pts.size(); ++i) {
    rows[i].spec = pts[i];
    keys.push_back(channel_key(cfg, pts[i]));
    if (use_cache)
      if (auto s = cache_get(cache_dir, keys[i]))
        if (auto ph = deserialize_physics(*s)) {
          rows[i].phys = *ph;
          rows[i].cache_hit = true;
          continue;
        }
    groups[group_key(keys[i])].members.push_back(i);
  }
  // points differing only in r, n share one channel
  std::vector<Group> work;
  for (auto& [k, g] : groups) {
    (void)k;
    work.push_back(g);
  }

  std::atomic<size_t> next{0};
  std::mutex cache_mutex;
  auto worker = [&] {
    for (size_t w; (w = next.fetch_add(1)) < work.size();) {
      const Group& g = work[w];
      try {
        compute_group(cfg, pts, g, rows);
        if (use_cache) {
          std::lock_guard<std::mutex> lk(cache_mutex);
          std::set<std::string> done;
          for (size_t i : g.members)
            if (done.insert(keys[i].text).second && !cache_put(cache_dir, keys[i], serialize(rows[i].phys)))
              use_cache = false;
        }
      } catch (const std::exception& e) {
        for (size_t i : g.members) {
          rows[i].converged = false;
          rows[i].status = std::string("error: ") + e.what();
        }
      }
    }
  };
  const int nw = std::max(1, std::min<int>(opt.workers, static_cast<int>(work.size())));
  if (nw == 1) {
    worker();
  } else {
    std::vector<std::thread> th;
    for (int i = 0; i < nw; ++i) th.emplace_back(worker);
    for (auto& t : th) t.join();
  }

  RunSummary sum;
  for (auto& r : rows) {
    if (r.status.rfind("error", 0) == 0) {
      ++sum.failed;
      continue;
    }
    try {
      finish_point(cfg, r);
    } catch (const std::exception& e) {
      r.status = std::string("error: ") + e.what();
      r.converged = false;
    }
    if (r.status != "ok") ++sum.failed;
  }
  for (auto& r : rows) {
    // commas would break the CSV
    std::replace(r.status.begin(), r.status.end(), ',', ';');
    std::replace(r.status.begin(), r.status.end(), '\n', ' ');
  }

  const std::string name = cfg.output_path.empty() ? cfg.scenario + ".csv" : cfg.output_path;
  fs::path path = fs::path(name).is_absolute() || opt.out_dir.empty() ? fs::path(name)
                                                                      : fs::path(opt.out_dir) / name;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ConfigError("output_path: cannot write " + path.string());
  out << csv_header() << '\n';
  for (const auto& r : rows) out << csv_row(r) << '\n';
  sum.rows = std::move(rows);
  sum.csv_path = path.string();
  return sum;
}

}  // namespace rgc
