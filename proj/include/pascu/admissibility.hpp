#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "pascu/grids.hpp"
#include "pascu/kernel.hpp"
#include "pascu/params.hpp"
#include "pascu/quadrature.hpp"

namespace pascu {

enum class Verdict { pass, fail, not_applicable };

const char* verdict_name(Verdict v);

/// Where a condition is worst. t-grid conditions fill t; N_Pi fills z and eps.
struct Witness {
  std::optional<double> t;
  std::optional<double> t_next;  // right end of an interval of increase
  std::optional<std::complex<double>> z;
  std::optional<std::complex<double>> eps;
  double value = 0.0;
};

struct ConditionResult {
  std::string name;
  Verdict verdict = Verdict::not_applicable;
  /// Worst-case slack: >= 0 on pass, < 0 on fail, NaN when not applicable.
  double margin = 0.0;
  std::optional<Witness> witness;
  std::string note;
};

/// Canonical condition names, in report order.
inline constexpr const char* kConditionNames[] = {"range_closed_form", "additional_cond", "final_cond",
                                                  "initial_cond",      "monotone_decreasing", "n_pi_nonneg"};

struct AdmissibilityReport {
  std::string kernel;
  MuNuPair munu;
  double xi = 0.0;
  std::vector<ConditionResult> conditions;
  std::vector<std::string> notes;

  const ConditionResult& get(const std::string& name) const;
  /// True when no condition failed.
  bool all_applicable_pass() const;
};

// Closed-form parameter ranges.

/// min[1 + 1/mu - 1/nu, (1 + 1/mu - xi)/(1 + 2 xi)]
double bernardi_c_bound(const MuNuPair& munu, double xi);
ConditionResult check_range_bernardi(double c, const MuNuPair& munu, double xi);
ConditionResult check_range_bernardi_gamma0(double c, double alpha, double xi);
ConditionResult check_range_hypergeom(double A, double B, double C, const MuNuPair& munu, double xi);

enum class AbCase { none, i, ii, iii };
const char* ab_case_name(AbCase c);
struct AbRangeResult {
  ConditionResult result;
  AbCase matched = AbCase::none;
};
AbRangeResult check_range_ab(double a, double b, const MuNuPair& munu);
ConditionResult check_range_komatu(double c, double p, const MuNuPair& munu, double xi);

/// Dispatches on the kernel family; tabulated kernels are not covered.
ConditionResult check_range(const Kernel& k, const MuNuPair& munu, double xi);

/// Numeric companion of the gamma = 0 Bernardi range: the grid check J(t) <= 0
/// and the reduced polynomial inequality in (c, alpha, xi).
struct Gamma0Companion {
  ConditionResult j_grid;
  ConditionResult reduced;
};
Gamma0Companion gamma0_companion(double c, double alpha, double xi, const std::vector<double>& t_grid);

// Numeric inequalities on a t-grid.

/// Left-hand sides of the final and initial inequalities at one t.
double final_cond_value(const Kernel& k, const MuNuPair& munu, double xi, double t);
double initial_cond_value(const Kernel& k, const MuNuPair& munu, double xi, double t,
                          const QuadratureSpec& quad = {});

ConditionResult check_ineq_additional(const Kernel& k, const MuNuPair& munu, double xi);
ConditionResult check_ineq_final(const Kernel& k, const MuNuPair& munu, double xi,
                                 const std::vector<double>& t_grid);
ConditionResult check_ineq_initial(const Kernel& k, const MuNuPair& munu, double xi,
                                   const std::vector<double>& t_grid, const QuadratureSpec& quad = {});

/// [(1 - xi/mu) Pi(t) + xi t^{1/nu - 1/mu} Lambda_nu(t)] / (1 - t^2).
/// For mu = 0 (gamma = 0): [(1 - xi/alpha) Lambda_alpha(t) + xi t^{1 - 1/alpha} lambda(t)] / (1 - t^2).
double monotone_function(const Kernel& k, const MuNuPair& munu, double xi, double t,
                         const QuadratureSpec& quad = {});
ConditionResult check_monotone_decreasing(const Kernel& k, const MuNuPair& munu, double xi,
                                          const std::vector<double>& t_grid, const QuadratureSpec& quad = {});

// Duality functional.

/// h(w) = w (1 + (eps - 1) w / 2) / (1 - w)^2 and its derivative.
std::complex<double> h_over_w(std::complex<double> w, std::complex<double> eps);
std::complex<double> h_prime(std::complex<double> w, std::complex<double> eps);

struct NPiOptions {
  DiskGrid z_grid = make_disk_grid(24, 48, 0.99);
  int eps_points = 32;
  int points_per_panel = 16;
};

struct NPiResult {
  /// Minimum over the (z, eps) product grid.
  double min_value = 0.0;
  std::complex<double> argmin_z;
  std::complex<double> argmin_eps;
  /// Minimum over the z-grid with eps minimized exactly (the functional is affine in eps).
  double exact_eps_min = 0.0;
  std::complex<double> exact_argmin_z;
  std::complex<double> exact_argmin_eps;
  /// Estimated contribution of the part of (0, 1) the fixed rule leaves out.
  double neglected_tail = 0.0;
  std::size_t evaluations = 0;
};

/// int_0^1 t^{1/mu - 1} Pi(t) L_{xi,z}(t) dt at one (z, eps).
double n_pi_value(const Kernel& k, const MuNuPair& munu, double xi, std::complex<double> z,
                  std::complex<double> eps, const QuadratureSpec& quad = {});

/// Grid minimum of the functional; needs mu > 0.
NPiResult eval_n_pi(const Kernel& k, const MuNuPair& munu, double xi, const NPiOptions& opts = {},
                    const QuadratureSpec& quad = {});

struct AssessOptions {
  std::vector<double> t_grid = default_t_grid();
  NPiOptions n_pi;
  bool run_n_pi = true;
  /// Verdict tolerance for the N_Pi grid certificate.
  double n_pi_tol = 1e-3;
  QuadratureSpec quad;
};

AdmissibilityReport assess(const Kernel& k, const MuNuPair& munu, double xi,
                           const AssessOptions& opts = {});

}  // namespace pascu
