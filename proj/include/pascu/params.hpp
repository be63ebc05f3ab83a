#pragma once

#include <string>
#include <vector>

namespace pascu {

/// Problem parameters of the class W_beta(alpha, gamma) and the target
/// Pascu class M(xi). rho = 0 selects the plain transform.
struct WFamilySpec {
  double alpha = 0.0;
  double gamma = 0.0;
  double beta = 0.0;
  double xi = 0.0;
  double rho = 0.0;
};

/// Auxiliary exponents with mu + nu = alpha - gamma and mu * nu = gamma.
struct MuNuPair {
  double mu = 0.0;
  double nu = 0.0;

  bool degenerate() const noexcept { return mu == 0.0 && nu == 0.0; }
  bool both_positive() const noexcept { return mu > 0.0 && nu > 0.0; }
};

/// How the two roots are assigned to (mu, nu) when gamma > 0.
///  - max_root: mu is the larger root.
///  - unit_root: mu = 1 when 1 is a root (the alpha = 1 + 2 gamma family),
///    otherwise mu is the smaller root so that nu >= mu.
enum class MuAssignment { max_root, unit_root };

MuNuPair resolve_mu_nu(double alpha, double gamma, MuAssignment rule = MuAssignment::max_root);

/// Pair built directly from (mu, nu); alpha and gamma follow from it.
inline double alpha_of(const MuNuPair& p) { return p.mu + p.nu + p.mu * p.nu; }
inline double gamma_of(const MuNuPair& p) { return p.mu * p.nu; }

struct Violation {
  std::string field;
  double value = 0.0;
  std::string message;
};

struct SpecValidation {
  WFamilySpec spec;
  std::vector<Violation> violations;
  std::vector<std::string> warnings;

  bool ok() const noexcept { return violations.empty(); }
};

/// Collects every violated invariant; never throws.
SpecValidation validate_spec(const WFamilySpec& spec);

}  // namespace pascu
