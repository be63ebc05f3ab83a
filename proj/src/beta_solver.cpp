#include "pascu/beta_solver.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pascu/acceleration.hpp"
#include "pascu/errors.hpp"

namespace pascu {

const char* method_name(BetaMethod m) {
  switch (m) {
    case BetaMethod::integral: return "integral";
    case BetaMethod::moments: return "moments";
    case BetaMethod::rho_integral: return "rho_integral";
  }
  return "unknown";
}

double beta_from_x(double x) {
  if (!(1.0 + x > 1e-12)) throw SolverError("no finite sharp β: integral at or below −1");
  return x / (1.0 + x);
}

namespace {

void check_xi(double xi) {
  if (!(xi >= 0.0 && xi <= 1.0)) throw DomainError("xi must lie in [0, 1]");
}

struct Weighted {
  double value;
  double error;
};

// int lambda(t) w(g(t), q(t)) dt, tracking the largest series tail seen.
template <class W>
Weighted integrate_gq(const Kernel& k, const MuNuPair& munu, const QuadratureSpec& quad,
                      const TruncationPolicy& policy, bool need_g, bool need_q, W w) {
  double worst_tail = 0.0;
  auto f = [&](double t) {
    double g = 0.0, q = 0.0;
    if (need_g) {
      const SeriesEstimate e = eval_g_estimate(t, munu, policy);
      g = e.value;
      worst_tail = std::max(worst_tail, e.tail_bound);
    }
    if (need_q) {
      const SeriesEstimate e = eval_q_estimate(t, munu, policy);
      q = e.value;
      worst_tail = std::max(worst_tail, e.tail_bound);
    }
    return k.density(t) * w(g, q);
  };
  const QuadResult r = integrate(f, k.signature(), quad);
  // lambda has unit mass, so a pointwise tail bound carries over directly
  return {r.value, r.error + 2.0 * worst_tail};
}

}  // namespace

BetaResult solve_beta(const Kernel& k, const MuNuPair& munu, double xi, const QuadratureSpec& quad,
                      const TruncationPolicy& policy) {
  check_xi(xi);
  const Weighted w = integrate_gq(k, munu, quad, policy, xi < 1.0, xi > 0.0,
                                  [xi](double g, double q) { return (1.0 - xi) * g + xi * (2.0 * q - 1.0); });
  const double x = -w.value;
  return {x, beta_from_x(x), w.error, BetaMethod::integral, 0};
}

BetaResult beta_from_moments(const Kernel& k, const MuNuPair& munu, double xi, int n_max,
                             const QuadratureSpec& quad) {
  check_xi(xi);
  if (n_max < 10) throw DomainError("n_max must be >= 10");
  const std::vector<double> tau = moments(k, n_max, quad);
  std::vector<double> b(tau.size());
  for (std::size_t n = 0; n < tau.size(); ++n) {
    const double m = static_cast<double>(n);
    b[n] = (m + 1.0) * (1.0 - xi + xi * (m + 1.0)) * tau[n] / coefficient_denominator(munu, static_cast<int>(n));
  }

  const int cap = std::min<int>(static_cast<int>(b.size()), 161);
  double prev = accelerated_alternating_sum(std::span<const double>(b.data(), std::min(8, cap)));
  double inc = HUGE_VAL;
  int used = std::min(8, cap);
  for (int n = 12; n <= cap; n += 4) {
    const double cur = accelerated_alternating_sum(std::span<const double>(b.data(), n));
    inc = std::abs(cur - prev);
    prev = cur;
    used = n;
    if (inc < 1e-12) break;
  }
  if (!(inc <= 1e-8)) {
    throw TruncationError("moment series acceleration did not converge; last sum " + std::to_string(prev),
                          inc);
  }
  const double x = 1.0 - 2.0 * prev;
  return {x, beta_from_x(x), 2.0 * inc, BetaMethod::moments, used};
}

BetaResult solve_beta_rho(const Kernel& k, const MuNuPair& munu, double xi, double rho,
                          const QuadratureSpec& quad, const TruncationPolicy& policy) {
  check_xi(xi);
  if (!(rho < 1.0)) throw DomainError("rho must be < 1");
  const Weighted w = integrate_gq(k, munu, quad, policy, xi < 1.0, xi > 0.0, [xi](double g, double q) {
    return (1.0 - xi) * 0.5 * (1.0 - g) + xi * (1.0 - q);
  });
  const double i = w.value;
  if (!(i > 0.0)) throw SolverError("generalized sharp β undefined for this kernel");
  const double beta = 1.0 - 1.0 / (2.0 * i * (1.0 - rho));
  return {i, beta, w.error, BetaMethod::rho_integral, 0};
}

}  // namespace pascu
