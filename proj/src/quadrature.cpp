#include "pascu/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

#include "pascu/errors.hpp"

namespace pascu {

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("quadrature tolerances must be > 0");
  if (max_subdivisions < 1) throw DomainError("max_subdivisions must be >= 1");
}

void EndpointSignature::validate() const {
  if (!(pow0 > -1.0)) throw DomainError("endpoint exponent pow0 must be > -1 for integrability");
  if (!(pow1 > -1.0)) throw DomainError("endpoint exponent pow1 must be > -1 for integrability");
  if (!(log0_power >= 0.0)) throw DomainError("log0_power must be >= 0");
}

namespace {

// Gauss-Kronrod 7/15 abscissae (descending) and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

template <class T>
struct Segment {
  double a, b;
  T value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class T, class F>
Segment<T> gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const T fc = f(c);
  T resk = fc * kWgk[7];
  T resg = fc * kWg[3];
  double resabs = std::abs(resk);
  std::array<T, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    f1[j] = f(c - dx);
    f2[j] = f(c + dx);
    const T sum = f1[j] + f2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  const T mean = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

  const double ah = std::abs(h);
  resabs *= ah;
  resasc *= ah;
  double err = std::abs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
  return {a, b, resk * h, err};
}

template <class T, class F>
std::pair<T, double> adaptive(const F& f, double a, double b, double abs_tol, double rel_tol,
                              int max_sub, int& used) {
  std::priority_queue<Segment<T>> heap;
  heap.push(gk15<T>(f, a, b));
  T total = heap.top().value;
  double err = heap.top().error;
  T settled_value{};
  double settled_error = 0.0;
  int count = 1;

  while (!heap.empty()) {
    if (err + settled_error <= std::max(abs_tol, rel_tol * std::abs(total))) break;
    Segment<T> worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        std::abs(worst.b - worst.a) <= 4.0 * kEps * std::max(std::abs(worst.a), std::abs(worst.b))) {
      // Cannot split further: accept as is.
      heap.pop();
      err -= worst.error;
      settled_value += worst.value;
      settled_error += worst.error;
      continue;
    }
    if (count >= max_sub) {
      used = count;
      throw QuadratureError("quadrature subdivision budget exhausted", std::real(total),
                            err + settled_error);
    }
    heap.pop();
    Segment<T> left = gk15<T>(f, worst.a, mid);
    Segment<T> right = gk15<T>(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
    if (err < 0.0) {
      // Recompute to shed accumulated cancellation.
      err = 0.0;
      auto copy = heap;
      while (!copy.empty()) {
        err += copy.top().error;
        copy.pop();
      }
    }
  }
  used = count;
  return {total, err + settled_error};
}

double substitution_exponent(EndBehaviour e) {
  if (e.power < 0.0 || e.log_power > 0.0) {
    const double m = (e.log_power > 0.0 ? 2.0 : 1.0) / (e.power + 1.0);
    return std::clamp(m, 1.0, 40.0);
  }
  return 1.0;
}

// Integral over the half-interval of length len next to the singular end e,
// with x = e + dir len s^m (dir = +1 for a left end, -1 for a right end).
// The sliver closer to e than d_min (one ulp next to a nonzero end) cannot
// be sampled; it is added from the declared power law instead.
template <class T, class F>
std::pair<T, double> one_sided(const F& f, double e, double dir, double len, double m, double power,
                               double abs_tol, double rel_tol, int max_sub, int& used) {
  if (m == 1.0) {
    auto plain = [&](double s) -> T { return f(e + dir * len * s) * len; };
    return adaptive<T>(plain, 0.0, 1.0, abs_tol, rel_tol, max_sub, used);
  }
  // Near 0 the floor keeps t^p away from overflow for p close to -1.
  const double d_min = std::max(std::abs(e) * std::numeric_limits<double>::epsilon(), 1e-300);
  const double s_min = std::pow(d_min / len, 1.0 / m);
  auto g = [&](double s) -> T {
    const double sm = std::pow(s, m);
    const double x = e + dir * len * sm;
    if (x == e) return T{};
    return f(x) * (len * m * sm / s);
  };
  auto out = adaptive<T>(g, s_min, 1.0, abs_tol, rel_tol, max_sub, used);
  out.first += f(e + dir * d_min) * (d_min / (power + 1.0));
  return out;
}

template <class T, class F>
std::pair<T, double> two_sided(const F& f, double a, double b, EndBehaviour left,
                               EndBehaviour right, const QuadratureSpec& spec, int& used) {
  spec.validate();
  if (a == b) return {T{}, 0.0};
  if (!(a < b)) throw DomainError("integration interval must satisfy a <= b");
  if (!(left.power > -1.0) || !(right.power > -1.0)) {
    throw DomainError("endpoint exponent must be > -1 for integrability");
  }
  const double ml = substitution_exponent(left);
  const double mr = substitution_exponent(right);
  if (ml == 1.0 && mr == 1.0) {
    return adaptive<T>([&](double x) -> T { return f(x); }, a, b, spec.abs_tol, spec.rel_tol,
                       spec.max_subdivisions, used);
  }
  const double mid = 0.5 * (a + b);
  int u1 = 0, u2 = 0;
  auto [v1, e1] = one_sided<T>(f, a, 1.0, mid - a, ml, left.power, 0.5 * spec.abs_tol, spec.rel_tol,
                               spec.max_subdivisions, u1);
  auto [v2, e2] = one_sided<T>(f, b, -1.0, b - mid, mr, right.power, 0.5 * spec.abs_tol, spec.rel_tol,
                               spec.max_subdivisions, u2);
  used = u1 + u2;
  return {v1 + v2, e1 + e2};
}

}  // namespace

QuadResult integrate_interval(const RealIntegrand& f, double a, double b, EndBehaviour left,
                              EndBehaviour right, const QuadratureSpec& spec) {
  int used = 0;
  auto [v, e] = two_sided<double>(f, a, b, left, right, spec, used);
  return {v, e, used};
}

ComplexQuadResult integrate_interval_complex(const ComplexIntegrand& f, double a, double b,
                                             EndBehaviour left, EndBehaviour right,
                                             const QuadratureSpec& spec) {
  int used = 0;
  auto [v, e] = two_sided<std::complex<double>>(f, a, b, left, right, spec, used);
  return {v, e, used};
}

QuadResult integrate(const RealIntegrand& f, const EndpointSignature& sig,
                     const QuadratureSpec& spec) {
  sig.validate();
  return integrate_interval(f, 0.0, 1.0, {sig.pow0, sig.log0_power}, {sig.pow1, 0.0}, spec);
}

QuadResult integrate_tail(const RealIntegrand& f, double a, EndBehaviour at_one,
                          const QuadratureSpec& spec) {
  if (!(a > 0.0 && a <= 1.0)) throw DomainError("tail integral needs 0 < a <= 1");
  constexpr double kSwitch = 0.05;
  if (a >= kSwitch) return integrate_interval(f, a, 1.0, {}, at_one, spec);

  // Below the switch point integrate in y = log x.
  auto in_log = [&](double y) {
    const double x = std::exp(y);
    return f(x) * x;
  };
  QuadResult lo = integrate_interval(in_log, std::log(a), std::log(kSwitch), {}, {}, spec);
  QuadResult hi = integrate_interval(f, kSwitch, 1.0, {}, at_one, spec);
  return {lo.value + hi.value, lo.error + hi.error, lo.intervals + hi.intervals};
}

FixedRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("Gauss-Legendre order must be >= 1");
  FixedRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

FixedRule graded_unit_rule(double left_exponent, int points_per_panel, double s_min,
                           int right_levels) {
  if (!(left_exponent > -1.0)) throw DomainError("left exponent must be > -1");
  const FixedRule gl = gauss_legendre(points_per_panel);
  FixedRule out;

  // Left half: t = s^m / 2.
  const double m = std::clamp(2.0 / (1.0 + std::min(left_exponent, 1.0)), 1.0, 40.0);
  const double floor_s = std::pow(2.0 * 1e-280, 1.0 / m);
  const double s_lo = std::max(s_min, floor_s);
  for (double hi = 1.0; hi > s_lo; hi *= 0.5) {
    const double lo = std::max(0.5 * hi, s_lo);
    const double c = 0.5 * (hi + lo), h = 0.5 * (hi - lo);
    for (std::size_t j = 0; j < gl.size(); ++j) {
      const double s = c + h * gl.nodes[j];
      const double sm1 = std::pow(s, m - 1.0);
      out.nodes.push_back(0.5 * sm1 * s);
      out.weights.push_back(gl.weights[j] * h * 0.5 * m * sm1);
    }
  }
  out.left_cut = 0.5 * std::pow(s_lo, m);

  // Right half: t = 1 - u / 2 with u halving toward 0.
  double u_hi = 1.0;
  for (int level = 0; level < right_levels; ++level) {
    const double u_lo = 0.5 * u_hi;
    const double c = 0.5 * (u_hi + u_lo), h = 0.5 * (u_hi - u_lo);
    for (std::size_t j = 0; j < gl.size(); ++j) {
      const double u = c + h * gl.nodes[j];
      out.nodes.push_back(1.0 - 0.5 * u);
      out.weights.push_back(gl.weights[j] * h * 0.5);
    }
    u_hi = u_lo;
  }
  out.right_cut = 1.0 - 0.5 * u_hi;
  return out;
}

}  // namespace pascu
