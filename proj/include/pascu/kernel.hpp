#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "pascu/params.hpp"
#include "pascu/quadrature.hpp"

namespace pascu {

enum class KernelFamily { bernardi, hypergeom, ab_power, komatu, tabulated };

const char* family_name(KernelFamily f);

/// lambda(t) = (c+1) t^c
struct BernardiParams {
  double c = 0.0;
};

/// lambda(t) = ((1+c)^p / Gamma(p)) t^c (log 1/t)^{p-1}
struct KomatuParams {
  double c = 0.0;
  double p = 2.0;
};

/// lambda(t) = (a+1)(b+1) t^a (1 - t^{b-a}) / (b - a), or (a+1)^2 t^a log(1/t) when a = b.
struct AbPowerParams {
  double a = 0.0;
  double b = 1.0;
};

/// Value and first two derivatives of a profile phi at u = 1 - t.
struct ProfileJet {
  double value = 1.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

enum class ProfileKind { constant, komatu, custom };

/// lambda(t) = k t^{B-1} (1-t)^{C-A-B} phi(1-t).
/// The komatu profile is phi(u) = (-log(1-u)/u)^{p-1}.
struct HypergeomParams {
  double A = 0.0;
  double B = 1.0;
  double C = 2.0;
  ProfileKind profile = ProfileKind::constant;
  double p = 2.0;  // komatu profile exponent
  std::function<ProfileJet(double)> custom;
};

/// Samples (t_i, lambda_i) with t_0 = 0 < ... < t_last = 1, linearly interpolated.
struct TabulatedParams {
  std::vector<double> t;
  std::vector<double> lambda;
};

using KernelParams =
    std::variant<BernardiParams, HypergeomParams, AbPowerParams, KomatuParams, TabulatedParams>;

struct KernelJet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// One-sided limits lambda(1-), lambda'(1-). d1 may be -infinity.
struct KernelAtOne {
  double value = 0.0;
  double d1 = 0.0;
};

/// Normalized kernel density on (0, 1). Immutable after construction.
class Kernel {
 public:
  KernelFamily family() const noexcept { return family_; }
  const KernelParams& params() const noexcept { return params_; }
  double norm_const() const noexcept { return norm_const_; }
  const EndpointSignature& signature() const noexcept { return signature_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// lambda(t); t must lie in (0, 1).
  double density(double t) const;
  /// lambda, lambda', lambda'' at t in (0, 1).
  KernelJet jet(double t) const;
  KernelAtOne at_one() const;

 private:
  friend Kernel kernel_normalize(KernelParams params, const QuadratureSpec& quad);

  double raw_density(double t) const;  // without norm_const

  KernelFamily family_ = KernelFamily::bernardi;
  KernelParams params_;
  double norm_const_ = 1.0;
  EndpointSignature signature_;
  std::vector<std::string> warnings_;
};

/// Validates parameters, fixes the normalizing constant (closed form where
/// known, numeric otherwise), and spot-checks nonnegativity and unit mass.
Kernel kernel_normalize(KernelParams params, const QuadratureSpec& quad = {});

Kernel make_bernardi(double c);
Kernel make_komatu(double c, double p);
Kernel make_ab_power(double a, double b);
Kernel make_hypergeom(double A, double B, double C, ProfileKind profile = ProfileKind::constant,
                      double p = 2.0);
Kernel make_tabulated(std::vector<double> t, std::vector<double> lambda);

double kernel_density(const Kernel& k, double t);

/// tau_n = integral of lambda(t) t^n over (0, 1).
double moment_tau(const Kernel& k, int n, const QuadratureSpec& quad = {});
/// tau_0 .. tau_{n_max}.
std::vector<double> moments(const Kernel& k, int n_max, const QuadratureSpec& quad = {});

/// Lambda_nu(t) = integral over (t, 1) of lambda(x) x^{-1/nu}; t = 0 allowed when integrable.
double capital_lambda(const Kernel& k, double nu, double t, const QuadratureSpec& quad = {});

/// Pi_{mu,nu}(t); equals Lambda_alpha when mu = 0 (gamma = 0).
/// Computed as a single integral after exchanging the order of integration.
double capital_pi(const Kernel& k, const MuNuPair& munu, double t, const QuadratureSpec& quad = {});

/// Pi_{mu,nu}(t) as the literal nested integral of Lambda_nu; slow, for cross-checks.
double capital_pi_nested(const Kernel& k, const MuNuPair& munu, double t,
                         const QuadratureSpec& quad = {});

}  // namespace pascu
