#include "pascu/aux_functions.hpp"

#include <cmath>
#include <vector>

#include "pascu/errors.hpp"

namespace pascu {

PowerSeries phi_series(const MuNuPair& munu, const TruncationPolicy& policy) {
  policy.validate();
  std::vector<Complex> c(static_cast<std::size_t>(policy.order) + 1);
  c[0] = 1.0;
  for (int n = 1; n <= policy.order; ++n) c[n] = coefficient_denominator(munu, n) / (n + 1.0);
  return PowerSeries(std::move(c));
}

PowerSeries psi_series(const MuNuPair& munu, const TruncationPolicy& policy) {
  policy.validate();
  std::vector<Complex> c(static_cast<std::size_t>(policy.order) + 1);
  c[0] = 1.0;
  for (int n = 1; n <= policy.order; ++n) c[n] = (n + 1.0) / coefficient_denominator(munu, n);
  return PowerSeries(std::move(c));
}

namespace {

void check_t(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("t must lie in [0, 1]");
}

// t^n computed per term; pow keeps t = 0 and t = 1 exact.
double tpow(double t, int n) { return n == 0 ? 1.0 : std::pow(t, n); }

}  // namespace

SeriesEstimate eval_g_estimate(double t, const MuNuPair& munu, const TruncationPolicy& policy) {
  check_t(t);
  auto term = [&](int n) { return (n + 1.0) * tpow(t, n) / coefficient_denominator(munu, n); };
  SeriesEstimate s = sum_alternating(term, policy);
  s.value = 2.0 * s.value - 1.0;
  s.tail_bound *= 2.0;
  return s;
}

double eval_g(double t, const MuNuPair& munu, const TruncationPolicy& policy) {
  return eval_g_estimate(t, munu, policy).value;
}

SeriesEstimate eval_q_estimate(double t, const MuNuPair& munu, const TruncationPolicy& policy) {
  check_t(t);
  auto term = [&](int n) {
    return (n + 1.0) * (n + 1.0) * tpow(t, n) / coefficient_denominator(munu, n);
  };
  return sum_alternating(term, policy);
}

double eval_q(double t, const MuNuPair& munu, const TruncationPolicy& policy) {
  return eval_q_estimate(t, munu, policy).value;
}

double eval_g_prime(double t, const MuNuPair& munu, const TruncationPolicy& policy) {
  check_t(t);
  // g'(t) = -2 sum_m (-1)^m (m+1)(m+2) t^m / D(m+1)
  auto term = [&](int m) {
    return (m + 1.0) * (m + 2.0) * tpow(t, m) / coefficient_denominator(munu, m + 1);
  };
  return -2.0 * sum_alternating(term, policy).value;
}

double gq_identity_residual(double t, const MuNuPair& munu, const TruncationPolicy& policy) {
  const double q = eval_q(t, munu, policy);
  const double g = eval_g(t, munu, policy);
  const double gp = eval_g_prime(t, munu, policy);
  return std::abs(2.0 * q - (t * gp + g + 1.0));
}

Complex psi_double_integral(Complex z, const MuNuPair& munu, const QuadratureSpec& quad) {
  if (!(munu.mu > 0.0) || !(munu.nu > 0.0)) {
    throw DomainError("use single-integral form");
  }
  if (!(std::abs(z) < 1.0)) throw DomainError("psi integral needs |z| < 1");
  // With u = t^nu, v = s^mu the weight u^{1/nu-1} v^{1/mu-1} / (mu nu)
  // becomes ds dt and the integrand is bounded.
  QuadratureSpec inner = quad;
  inner.abs_tol = quad.abs_tol * 0.1;
  inner.rel_tol = quad.rel_tol * 0.1;
  auto outer = [&](double s) -> Complex {
    const Complex zs = std::pow(s, munu.mu) * z;
    auto f = [&](double t) -> Complex {
      const Complex d = 1.0 - std::pow(t, munu.nu) * zs;
      return 1.0 / (d * d);
    };
    return integrate_interval_complex(f, 0.0, 1.0, {}, {}, inner).value;
  };
  return integrate_interval_complex(outer, 0.0, 1.0, {}, {}, quad).value;
}

Complex psi_integral_eval(Complex z, const MuNuPair& munu, const QuadratureSpec& quad) {
  if (munu.both_positive()) return psi_double_integral(z, munu, quad);
  if (!(std::abs(z) < 1.0)) throw DomainError("psi integral needs |z| < 1");
  const double a = munu.mu > 0.0 ? munu.mu : munu.nu;
  if (a == 0.0) return 1.0 / ((1.0 - z) * (1.0 - z));
  auto f = [&](double t) -> Complex {
    const Complex d = 1.0 - std::pow(t, a) * z;
    return 1.0 / (d * d);
  };
  return integrate_interval_complex(f, 0.0, 1.0, {}, {}, quad).value;
}

}  // namespace pascu
