#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace pascu {

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;

  void validate() const;
};

/// Endpoint behaviour of an integrand on (0, 1):
/// f(t) ~ t^pow0 (log 1/t)^log0_power as t -> 0 and f(t) ~ (1-t)^pow1 as t -> 1.
struct EndpointSignature {
  double pow0 = 0.0;
  double pow1 = 0.0;
  double log0_power = 0.0;

  void validate() const;
};

/// Behaviour at one end of a finite interval: |x - end|^power (log)^log_power.
struct EndBehaviour {
  double power = 0.0;
  double log_power = 0.0;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

struct ComplexQuadResult {
  std::complex<double> value;
  double error = 0.0;
  int intervals = 0;
};

using RealIntegrand = std::function<double(double)>;
using ComplexIntegrand = std::function<std::complex<double>(double)>;

/// Adaptive Gauss-Kronrod (7/15) over (0, 1). Algebraic endpoint
/// singularities are removed by t = s^m substitutions chosen from the
/// signature; remaining log factors are resolved by bisection toward the
/// endpoint. Throws QuadratureError when the subdivision budget runs out.
QuadResult integrate(const RealIntegrand& f, const EndpointSignature& sig,
                     const QuadratureSpec& spec);

/// Same machinery over [a, b].
QuadResult integrate_interval(const RealIntegrand& f, double a, double b, EndBehaviour left,
                              EndBehaviour right, const QuadratureSpec& spec);

ComplexQuadResult integrate_interval_complex(const ComplexIntegrand& f, double a, double b,
                                             EndBehaviour left, EndBehaviour right,
                                             const QuadratureSpec& spec);

/// Integral over [a, 1] for 0 < a < 1 where the integrand may vary over many
/// decades near a (log-variable substitution below 0.05).
QuadResult integrate_tail(const RealIntegrand& f, double a, EndBehaviour at_one,
                          const QuadratureSpec& spec);

/// Fixed rule: nodes and weights.
struct FixedRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  /// Integration starts here; (0, left_cut) is neglected.
  double left_cut = 0.0;
  /// Integration stops here; (right_cut, 1) is neglected.
  double right_cut = 1.0;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// n-point Gauss-Legendre on [-1, 1].
FixedRule gauss_legendre(int n);

/// Composite Gauss-Legendre rule on (0, 1) for integrands that behave like
/// t^left_exponent (times logs) at 0 and have boundary layers at 1.
/// Left of 1/2 it uses t = s^m / 2 with m = 2 / (1 + left_exponent) and
/// panels in s halving down to s_min; right of 1/2 the panels halve toward
/// 1 for right_levels levels.
FixedRule graded_unit_rule(double left_exponent, int points_per_panel = 16,
                           double s_min = 1e-8, int right_levels = 30);

}  // namespace pascu
