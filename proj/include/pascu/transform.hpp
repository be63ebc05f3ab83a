#pragma once

#include <optional>
#include <string>

#include "pascu/grids.hpp"
#include "pascu/kernel.hpp"
#include "pascu/params.hpp"
#include "pascu/power_series.hpp"

namespace pascu {

/// Disk-sampling result for one real-part functional.
struct MembershipReport {
  std::string functional;  // "pascu_quotient" or "w_halfplane"
  double min_re = 0.0;
  double argmin_r = 0.0;
  double argmin_theta = 0.0;
  bool pass = false;
  double tol = 1e-3;
  /// Estimated truncation tail of the series at the largest radius.
  double tail_bound = 0.0;
  /// Minimum sits on the outermost radius.
  bool boundary_limited = false;
  /// Rotation maximizing the minimum (w_halfplane only).
  std::optional<double> best_phi;
  std::string note;
};

/// f(z) = z (1/z) int_0^z [(1-beta)(1 + x w)/(1 + y w) + beta] dw, convolved with psi_{mu,nu}.
/// Built by expanding the integrand, integrating term-wise, then taking the Hadamard product.
PowerSeries extremal_function(double beta, const MuNuPair& munu, Complex x, Complex y,
                              const TruncationPolicy& policy = {});

/// Multiplies the coefficient of z^{n+1} by tau_n. f must be normalized.
PowerSeries apply_V(const PowerSeries& f, const Kernel& k, const QuadratureSpec& quad = {});

/// rho z + (1 - rho) V(f).
PowerSeries apply_V_rho(const PowerSeries& f, const Kernel& k, double rho, const QuadratureSpec& quad = {});

/// [xi z (zF')' + (1-xi) zF'] / [xi zF' + (1-xi) F]; throws DomainError when the
/// denominator vanishes.
Complex pascu_quotient(const PowerSeries& F, double xi, Complex z);

/// Default membership grid: 24 radii up to 0.95, 48 angles.
DiskGrid default_membership_grid();

/// Minimum of Re pascu_quotient over the grid; pass iff min > -tol.
MembershipReport membership_min(const PowerSeries& F, double xi, const DiskGrid& grid = default_membership_grid(),
                                double tol = 1e-3);

/// H = (1 - alpha + 2 gamma) f/z + (alpha - 2 gamma) f' + gamma z f''; pass iff some
/// rotation phi on the grid keeps min Re(e^{i phi}(H - beta)) > -tol.
MembershipReport w_membership(const PowerSeries& f, const WFamilySpec& spec,
                              const DiskGrid& grid = default_membership_grid(), int n_phi = 720,
                              double tol = 1e-3);

/// 1 - (1 - beta_prime)/(1 - beta_sharp); negative exactly when beta_prime < beta_sharp.
double sharpness_margin(double beta_prime, double beta_sharp);

}  // namespace pascu
