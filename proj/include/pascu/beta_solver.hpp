#pragma once

#include "pascu/aux_functions.hpp"
#include "pascu/kernel.hpp"

namespace pascu {

enum class BetaMethod { integral, moments, rho_integral };

const char* method_name(BetaMethod m);

struct BetaResult {
  /// X = beta/(1-beta) for integral and moments; the integral I for rho_integral.
  double x_value = 0.0;
  double beta = 0.0;
  double err_estimate = 0.0;
  BetaMethod method = BetaMethod::integral;
  /// Terms used by the moment series (0 for quadrature methods).
  int terms = 0;
};

/// beta = X/(1+X); throws SolverError when 1 + X <= 1e-12.
double beta_from_x(double x);

/// X = -int lambda(t) [(1-xi) g(t) + xi (2 q(t) - 1)] dt by quadrature.
BetaResult solve_beta(const Kernel& k, const MuNuPair& munu, double xi,
                      const QuadratureSpec& quad = {}, const TruncationPolicy& policy = {});

/// Same X from the moments: X = 1 - 2 sum (-1)^n (n+1)(1 - xi + xi (n+1)) tau_n / D(n),
/// summed with alternating-series acceleration using at most n_max + 1 moments.
BetaResult beta_from_moments(const Kernel& k, const MuNuPair& munu, double xi, int n_max = 160,
                             const QuadratureSpec& quad = {});

/// I = int lambda(t) [(1-xi)(1-g(t))/2 + xi (1-q(t))] dt and beta = 1 - 1/(2 I (1-rho)).
BetaResult solve_beta_rho(const Kernel& k, const MuNuPair& munu, double xi, double rho,
                          const QuadratureSpec& quad = {}, const TruncationPolicy& policy = {});

}  // namespace pascu
