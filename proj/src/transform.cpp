#include "pascu/transform.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "pascu/aux_functions.hpp"
#include "pascu/errors.hpp"

namespace pascu {

PowerSeries extremal_function(double beta, const MuNuPair& munu, Complex x, Complex y,
                              const TruncationPolicy& policy) {
  policy.validate();
  if (std::abs(std::abs(x) - 1.0) > 1e-12 || std::abs(std::abs(y) - 1.0) > 1e-12) {
    throw DomainError("x and y must lie on the unit circle");
  }
  if (!(beta < 1.0)) throw DomainError("beta must be < 1");
  const int N = policy.order;

  // (1-beta)(1 + x w)/(1 + y w) + beta = 1 + (1-beta)(x-y) sum_{n>=1} (-y)^{n-1} w^n
  std::vector<Complex> integrand(N + 1);
  integrand[0] = 1.0;
  Complex py = 1.0;
  for (int n = 1; n <= N; ++n) {
    integrand[n] = (1.0 - beta) * (x - y) * py;
    py *= -y;
  }
  // (1/z) int_0^z: coefficient of w^n becomes that of z^n / (n + 1)
  std::vector<Complex> averaged(N + 1);
  for (int n = 0; n <= N; ++n) averaged[n] = integrand[n] / (n + 1.0);

  const PowerSeries g = hadamard(PowerSeries(std::move(averaged)), psi_series(munu, policy));

  // f(z) = z g(z); keep N + 1 coefficients
  std::vector<Complex> f(N + 1, 0.0);
  for (int n = 0; n + 1 <= N; ++n) f[n + 1] = g[n];
  return PowerSeries(std::move(f));
}

PowerSeries apply_V(const PowerSeries& f, const Kernel& k, const QuadratureSpec& quad) {
  if (!f.normalized(1e-12)) throw DomainError("apply_V needs a normalized series (a_0 = 0, a_1 = 1)");
  const int N = f.order();
  const std::vector<double> tau = moments(k, std::max(N - 1, 0), quad);
  std::vector<Complex> c(N + 1, 0.0);
  for (int n = 0; n + 1 <= N; ++n) c[n + 1] = tau[n] * f[n + 1];
  return PowerSeries(std::move(c));
}

PowerSeries apply_V_rho(const PowerSeries& f, const Kernel& k, double rho, const QuadratureSpec& quad) {
  if (!(rho < 1.0)) throw DomainError("rho must be < 1");
  PowerSeries F = apply_V(f, k, quad);
  std::vector<Complex> c(F.coeffs().begin(), F.coeffs().end());
  for (std::size_t n = 2; n < c.size(); ++n) c[n] *= (1.0 - rho);
  if (c.size() > 1) c[1] = rho + (1.0 - rho) * c[1];
  return PowerSeries(std::move(c));
}

Complex pascu_quotient(const PowerSeries& F, double xi, Complex z) {
  // both sides divided by z: sums of a_n z^{n-1} with weights
  Complex num = 0.0, den = 0.0;
  const auto c = F.coeffs();
  for (int n = F.order(); n >= 1; --n) {
    const double dn = n;
    num = num * z + (xi * dn * dn + (1.0 - xi) * dn) * c[n];
    den = den * z + (xi * dn + (1.0 - xi)) * c[n];
  }
  if (std::abs(den) <= 1e-14) throw DomainError("denominator zero: F leaves the admissible cone at z");
  return num / den;
}

DiskGrid default_membership_grid() { return make_disk_grid(24, 48, 0.95); }

namespace {

void finish(MembershipReport& rep, const PowerSeries& F, const DiskGrid& grid) {
  rep.tail_bound = F.tail_estimate(grid.radii.back());
  rep.boundary_limited = rep.argmin_r == grid.radii.back();
  if (rep.tail_bound > 1e-8) rep.note += (rep.note.empty() ? "" : "; ") + std::string("series tail above 1e-8 at max radius");
  if (rep.boundary_limited) {
    rep.note += (rep.note.empty() ? "" : "; ") + std::string("boundary-limited: rerun with higher order/radius");
  }
}

}  // namespace

MembershipReport membership_min(const PowerSeries& F, double xi, const DiskGrid& grid, double tol) {
  grid.validate();
  if (!(xi >= 0.0 && xi <= 1.0)) throw DomainError("xi must lie in [0, 1]");
  MembershipReport rep;
  rep.functional = "pascu_quotient";
  rep.tol = tol;
  rep.min_re = HUGE_VAL;
  for (double r : grid.radii) {
    for (double th : grid.angles) {
      const Complex z = std::polar(r, th);
      double v;
      try {
        v = pascu_quotient(F, xi, z).real();
      } catch (const DomainError&) {
        rep.min_re = -HUGE_VAL;
        rep.argmin_r = r;
        rep.argmin_theta = th;
        rep.pass = false;
        rep.note = "denominator vanishes on the grid";
        finish(rep, F, grid);
        return rep;
      }
      if (v < rep.min_re) {
        rep.min_re = v;
        rep.argmin_r = r;
        rep.argmin_theta = th;
      }
    }
  }
  rep.pass = rep.min_re > -tol;
  finish(rep, F, grid);
  return rep;
}

MembershipReport w_membership(const PowerSeries& f, const WFamilySpec& spec, const DiskGrid& grid, int n_phi,
                              double tol) {
  grid.validate();
  if (n_phi < 1) throw DomainError("phi grid must be non-empty");
  if (!f.normalized(1e-12)) throw DomainError("w_membership needs a normalized series");
  // H = sum a_{n+1} (1 + (alpha - gamma) n + gamma n^2) z^n
  const int N = f.order();
  std::vector<Complex> h(std::max(N, 1));
  for (int n = 0; n + 1 <= N; ++n) {
    const double dn = n;
    h[n] = f[n + 1] * (1.0 + (spec.alpha - spec.gamma) * dn + spec.gamma * dn * dn);
  }
  const PowerSeries H(std::move(h));

  std::vector<Complex> vals;
  std::vector<std::pair<double, double>> where;
  vals.reserve(grid.size());
  for (double r : grid.radii) {
    for (double th : grid.angles) {
      vals.push_back(H.evaluate(std::polar(r, th)) - spec.beta);
      where.emplace_back(r, th);
    }
  }

  MembershipReport rep;
  rep.functional = "w_halfplane";
  rep.tol = tol;
  rep.min_re = -HUGE_VAL;
  for (int j = 0; j < n_phi; ++j) {
    const double phi = 2.0 * std::numbers::pi * j / n_phi;
    const Complex rot = std::polar(1.0, phi);
    double m = HUGE_VAL;
    std::size_t at = 0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      const double v = (rot * vals[i]).real();
      if (v < m) {
        m = v;
        at = i;
      }
    }
    if (m > rep.min_re) {
      rep.min_re = m;
      rep.best_phi = phi;
      rep.argmin_r = where[at].first;
      rep.argmin_theta = where[at].second;
    }
  }
  rep.pass = rep.min_re > -tol;
  finish(rep, H, grid);
  return rep;
}

double sharpness_margin(double beta_prime, double beta_sharp) {
  if (!(beta_prime < 1.0) || !(beta_sharp < 1.0)) throw DomainError("beta values must be < 1");
  return 1.0 - (1.0 - beta_prime) / (1.0 - beta_sharp);
}

}  // namespace pascu
