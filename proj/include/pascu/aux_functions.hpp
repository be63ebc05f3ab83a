#pragma once

#include "pascu/acceleration.hpp"
#include "pascu/params.hpp"
#include "pascu/power_series.hpp"
#include "pascu/quadrature.hpp"

namespace pascu {

/// (1 + mu n)(1 + nu n), the coefficient factor shared by every auxiliary series.
inline double coefficient_denominator(const MuNuPair& p, int n) {
  return (1.0 + p.mu * n) * (1.0 + p.nu * n);
}

/// phi_{mu,nu}(z) = 1 + sum (n nu + 1)(n mu + 1)/(n + 1) z^n.
PowerSeries phi_series(const MuNuPair& munu, const TruncationPolicy& policy);

/// Convolution inverse of phi: 1 + sum (n + 1)/((n nu + 1)(n mu + 1)) z^n.
PowerSeries psi_series(const MuNuPair& munu, const TruncationPolicy& policy);

/// g(t) = 2 sum (n+1)(-t)^n / ((1+mu n)(1+nu n)) - 1 on [0, 1].
double eval_g(double t, const MuNuPair& munu, const TruncationPolicy& policy = {});
SeriesEstimate eval_g_estimate(double t, const MuNuPair& munu, const TruncationPolicy& policy = {});

/// Term-wise derivative g'(t).
double eval_g_prime(double t, const MuNuPair& munu, const TruncationPolicy& policy = {});

/// q(t) = sum (n+1)^2 (-t)^n / ((1+mu n)(1+nu n)) on [0, 1]. q(0) = 1.
double eval_q(double t, const MuNuPair& munu, const TruncationPolicy& policy = {});
SeriesEstimate eval_q_estimate(double t, const MuNuPair& munu, const TruncationPolicy& policy = {});

/// |2 q(t) - (t g'(t) + g(t) + 1)|.
double gq_identity_residual(double t, const MuNuPair& munu, const TruncationPolicy& policy = {});

/// psi_{mu,nu}(z) from its integral representation.
///  mu, nu > 0: (1 / mu nu) double integral of u^{1/nu-1} v^{1/mu-1} / (1 - uvz)^2.
///  otherwise:  single integral of 1 / (1 - t^a z)^2 with a the nonzero exponent.
Complex psi_integral_eval(Complex z, const MuNuPair& munu, const QuadratureSpec& quad = {});

/// The double-integral branch alone; rejects mu = 0 or nu = 0.
Complex psi_double_integral(Complex z, const MuNuPair& munu, const QuadratureSpec& quad = {});

}  // namespace pascu
