#include "pascu/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pascu/errors.hpp"

namespace pascu {

namespace {

constexpr double kRootTol = 1e-12;

}  // namespace

MuNuPair resolve_mu_nu(double alpha, double gamma, MuAssignment rule) {
  if (!(alpha >= 0.0) || !(gamma >= 0.0)) {
    throw DomainError("alpha and gamma must be nonnegative");
  }
  if (gamma == 0.0) return {0.0, alpha};

  const double s = alpha - gamma;
  const double disc = s * s - 4.0 * gamma;
  const double scale = std::max(1.0, s * s);
  if (disc < -1e-14 * scale) throw DomainError("no real μ,ν for these (α,γ)");
  if (s < 0.0) throw DomainError("parameters outside admissible cone");

  // Larger root first, smaller from the product to avoid cancellation.
  const double r1 = 0.5 * (s + std::sqrt(std::max(disc, 0.0)));
  const double r2 = gamma / r1;
  const double hi = std::max(r1, r2);
  const double lo = std::min(r1, r2);

  if (rule == MuAssignment::unit_root) {
    if (std::abs(lo - 1.0) <= kRootTol) return {1.0, hi};
    if (std::abs(hi - 1.0) <= kRootTol) return {1.0, lo};
    return {lo, hi};
  }
  return {hi, lo};
}

SpecValidation validate_spec(const WFamilySpec& spec) {
  SpecValidation out;
  out.spec = spec;
  auto add = [&](const char* field, double v, std::string msg) {
    out.violations.push_back({field, v, std::move(msg)});
  };

  if (!(spec.alpha >= 0.0)) add("alpha", spec.alpha, "alpha must be >= 0");
  if (!(spec.gamma >= 0.0)) add("gamma", spec.gamma, "gamma must be >= 0");
  if (!(spec.beta < 1.0)) add("beta", spec.beta, "beta must be < 1");
  if (!(spec.xi >= 0.0 && spec.xi <= 1.0)) add("xi", spec.xi, "xi must lie in [0, 1]");
  if (!(spec.rho < 1.0)) add("rho", spec.rho, "rho must be < 1");

  if (spec.alpha >= 0.0 && spec.gamma > 0.0) {
    const double s = spec.alpha - spec.gamma;
    if (s * s - 4.0 * spec.gamma < -1e-14 * std::max(1.0, s * s)) {
      add("gamma", spec.gamma, "(alpha - gamma)^2 must be >= 4 gamma for real mu, nu");
    } else if (s < 0.0) {
      add("alpha", spec.alpha, "alpha - gamma must be >= 0 for nonnegative mu, nu");
    }
  }
  if (spec.alpha == 0.0 && spec.gamma == 0.0) {
    out.warnings.push_back("mu = nu = 0 is degenerate; kernel operations dividing by mu or nu reject it");
  }
  return out;
}

}  // namespace pascu
