#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace rgc {

struct QuadOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;
  // > 0 marks the integrand oscillatory: the domain is cut into panels of
  // half this period before adaptive refinement.
  double period = 0.0;
};

inline QuadOptions quad2d_defaults() {
  QuadOptions o;
  o.rel_tol = 1e-5;
  return o;
}

template <class T>
struct IntegrationResult {
  T value{};
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = false;
};

struct IntegrandNaN : std::runtime_error {
  double abscissa;
  explicit IntegrandNaN(double x)
      : std::runtime_error(message(x)), abscissa(x) {}

 private:
  static std::string message(double x) {
    std::ostringstream os;
    os.precision(17);
    os << "non-finite integrand at x = " << x;
    return os.str();
  }
};

namespace detail {

// 21-point Kronrod extension of 10-point Gauss, nodes on [0,1) of [-1,1].
inline constexpr std::array<double, 11> gk21_x = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> gk21_wk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525478068, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> gk21_wg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class T>
double magnitude(const T& v) {
  return std::abs(v);
}

template <class T>
void check_finite(const T& v, double x) {
  bool ok;
  if constexpr (std::is_floating_point_v<T>)
    ok = std::isfinite(v);
  else
    ok = std::isfinite(v.real()) && std::isfinite(v.imag());
  if (!ok) throw IntegrandNaN(x);
}

template <class T>
struct Segment {
  double a, b;
  T value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class T, class F>
Segment<T> gk21(F& f, double a, double b, long& evals) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  T fc = f(c);
  check_finite(fc, c);
  T resk = fc * gk21_wk[10];
  T resg{};
  for (int j = 0; j < 10; ++j) {
    const double dx = h * gk21_x[j];
    T f1 = f(c - dx), f2 = f(c + dx);
    check_finite(f1, c - dx);
    check_finite(f2, c + dx);
    resk += (f1 + f2) * gk21_wk[j];
    if (j % 2 == 1) resg += (f1 + f2) * gk21_wg[j / 2];
  }
  evals += 21;
  T val = resk * h;
  double err = magnitude(T((resk - resg) * h));
  return {a, b, val, err};
}

template <class T, class F>
IntegrationResult<T> adaptive(F& f, std::vector<std::pair<double, double>> init,
                              const QuadOptions& opt) {
  IntegrationResult<T> res;
  std::priority_queue<Segment<T>> heap;
  T total{};
  double err = 0.0;
  for (auto [a, b] : init) {
    auto s = gk21<T>(f, a, b, res.evaluations);
    total += s.value;
    err += s.error;
    heap.push(s);
  }
  int nseg = static_cast<int>(heap.size());
  auto target = [&] { return std::max(opt.abs_tol, opt.rel_tol * magnitude(total)); };
  bool stuck = false;
  while (err > target() && nseg < opt.max_subdivisions) {
    Segment<T> s = heap.top();
    const double mid = 0.5 * (s.a + s.b);
    if (!(mid > s.a && mid < s.b) ||
        (s.b - s.a) < 64 * std::numeric_limits<double>::epsilon() *
                          std::max(std::abs(s.a), std::abs(s.b))) {
      stuck = true;
      break;
    }
    heap.pop();
    auto l = gk21<T>(f, s.a, mid, res.evaluations);
    auto r = gk21<T>(f, mid, s.b, res.evaluations);
    total += l.value + r.value - s.value;
    err += l.error + r.error - s.error;
    heap.push(l);
    heap.push(r);
    ++nseg;
  }
  // re-sum in a fixed order so the result does not depend on update history
  std::vector<Segment<T>> all;
  all.reserve(heap.size());
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](auto& x, auto& y) { return x.a < y.a; });
  T sum{};
  double esum = 0.0;
  for (auto& s : all) {
    sum += s.value;
    esum += s.error;
  }
  res.value = sum;
  res.error_estimate = esum;
  res.converged = !stuck && esum <= std::max(opt.abs_tol, opt.rel_tol * magnitude(sum));
  return res;
}

}  // namespace detail

// ∫_a^b f. Infinite ends are mapped by exp-sinh / sinh-sinh substitutions
// onto a finite window where the transformed integrand decays doubly
// exponentially.
template <class F>
auto integrate_1d(F&& f, double a, double b, const QuadOptions& opt = {})
    -> IntegrationResult<std::decay_t<std::invoke_result_t<F&, double>>> {
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  if (!(opt.rel_tol > 0) || !(opt.abs_tol > 0) || opt.max_subdivisions < 1)
    throw std::invalid_argument("integrate_1d: bad tolerances");
  if (!(a < b)) throw std::invalid_argument("integrate_1d: need lower < upper");
  const bool ia = std::isinf(a), ib = std::isinf(b);
  constexpr double hp = 1.5707963267948966;

  if (!ia && !ib) {
    std::vector<std::pair<double, double>> init;
    if (opt.period > 0) {
      const double w = 0.5 * opt.period;
      long n = std::max(1L, static_cast<long>(std::ceil((b - a) / w)));
      n = std::min<long>(n, std::max(1, opt.max_subdivisions / 2));
      for (long i = 0; i < n; ++i)
        init.emplace_back(a + (b - a) * double(i) / double(n),
                          i + 1 == n ? b : a + (b - a) * double(i + 1) / double(n));
    } else {
      init.emplace_back(a, b);
    }
    return detail::adaptive<T>(f, std::move(init), opt);
  }

  QuadOptions o = opt;
  o.period = 0.0;
  if (ia && ib) {
    auto g = [&](double s) -> T {
      const double q = hp * std::sinh(s);
      const double x = std::sinh(q);
      const double jac = hp * std::cosh(s) * std::cosh(q);
      if (!std::isfinite(jac)) return T{};
      return f(x) * jac;
    };
    return detail::adaptive<T>(g, {{-6.5, 0.0}, {0.0, 6.5}}, o);
  }
  // one-sided: x = a + e^{(π/2) sinh s}, or the mirror for a = −∞
  const double base = ia ? b : a;
  const double sign = ia ? -1.0 : 1.0;
  auto g = [&](double s) -> T {
    const double q = hp * std::sinh(s);
    const double y = std::exp(q);
    if (y == 0.0 || !std::isfinite(y)) return T{};
    return f(base + sign * y) * (hp * std::cosh(s) * y);
  };
  return detail::adaptive<T>(g, {{-5.0, 0.0}, {0.0, 5.0}}, o);
}

// Finite-domain variant starting from caller-chosen breakpoints (sorted,
// duplicates dropped), e.g. where the integrand is only piecewise smooth.
template <class F>
auto integrate_1d_pieces(F&& f, std::vector<double> breaks, const QuadOptions& opt = {})
    -> IntegrationResult<std::decay_t<std::invoke_result_t<F&, double>>> {
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  if (breaks.size() < 2 || std::isinf(breaks.front()) || std::isinf(breaks.back()))
    throw std::invalid_argument("integrate_1d_pieces: need a finite interval");
  std::vector<std::pair<double, double>> init;
  for (size_t i = 0; i + 1 < breaks.size(); ++i) init.emplace_back(breaks[i], breaks[i + 1]);
  QuadOptions o = opt;
  o.max_subdivisions = std::max<int>(o.max_subdivisions, static_cast<int>(init.size()) * 4);
  return detail::adaptive<T>(f, std::move(init), o);
}

// Iterated 2D rule over a rectangle-like domain with y-limits that may
// depend on x. Inner tolerance is a tenth of the outer one.
template <class F, class YLo, class YHi>
auto integrate_2d(F&& f, double ax, double bx, YLo&& ylo, YHi&& yhi,
                  const QuadOptions& opt = quad2d_defaults(),
                  const QuadOptions* inner_opt = nullptr)
    -> IntegrationResult<std::decay_t<std::invoke_result_t<F&, double, double>>> {
  using T = std::decay_t<std::invoke_result_t<F&, double, double>>;
  QuadOptions in = inner_opt ? *inner_opt : opt;
  if (!inner_opt) {
    in.rel_tol = opt.rel_tol / 10;
    in.abs_tol = opt.abs_tol / 10;
    in.period = 0.0;
  }
  long inner_evals = 0;
  bool inner_ok = true;
  double inner_err_max = 0.0, inner_rel_max = 0.0;
  auto outer = [&](double x) -> T {
    const double lo = ylo(x), hi = yhi(x);
    if (!(lo < hi)) return T{};
    auto r = integrate_1d([&](double y) { return f(x, y); }, lo, hi, in);
    inner_evals += r.evaluations;
    inner_ok = inner_ok && r.converged;
    inner_err_max = std::max(inner_err_max, r.error_estimate);
    const double mag = detail::magnitude(r.value);
    if (mag > 0) inner_rel_max = std::max(inner_rel_max, r.error_estimate / mag);
    return r.value;
  };
  auto r = integrate_1d(outer, ax, bx, opt);
  r.evaluations += inner_evals;
  const double span = (std::isinf(ax) || std::isinf(bx)) ? 0.0 : (bx - ax);
  r.error_estimate += std::max(inner_err_max * span,
                               inner_rel_max * detail::magnitude(r.value));
  r.converged = r.converged && inner_ok &&
                r.error_estimate <= std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(r.value));
  return r;
}

template <class F>
auto integrate_2d(F&& f, double ax, double bx, double ay, double by,
                  const QuadOptions& opt = quad2d_defaults()) {
  return integrate_2d(std::forward<F>(f), ax, bx, [ay](double) { return ay; },
                      [by](double) { return by; }, opt);
}

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

}  // namespace rgc
