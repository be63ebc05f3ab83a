#include <cmath>
#include <random>

#include "doctest.h"
#include "pascu/errors.hpp"
#include "pascu/params.hpp"
#include "pascu/power_series.hpp"

using namespace pascu;

TEST_CASE("roots of the (alpha, gamma) quadratic") {
  auto p = resolve_mu_nu(3.0, 1.0);
  CHECK(p.mu == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(p.nu == doctest::Approx(1.0).epsilon(1e-14));

  auto q = resolve_mu_nu(1.0, 0.0);
  CHECK(q.mu == 0.0);
  CHECK(q.nu == 1.0);

  // mu = 2, nu = 3: alpha = 2 + 3 + 6 = 11, gamma = 6.
  auto r = resolve_mu_nu(11.0, 6.0);
  CHECK(r.mu == doctest::Approx(3.0));
  CHECK(r.nu == doctest::Approx(2.0));
}

TEST_CASE("unit-root assignment puts mu = 1 on the alpha = 1 + 2 gamma line") {
  // gamma = 2: roots 1 and 2.
  auto max_rule = resolve_mu_nu(5.0, 2.0, MuAssignment::max_root);
  auto unit = resolve_mu_nu(5.0, 2.0, MuAssignment::unit_root);
  CHECK(max_rule.mu == doctest::Approx(2.0));
  CHECK(unit.mu == doctest::Approx(1.0));
  CHECK(unit.nu == doctest::Approx(2.0));
}

TEST_CASE("roots recover alpha and gamma") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.01, 5.0);
  for (int i = 0; i < 200; ++i) {
    double mu = u(rng), nu = u(rng);
    double alpha = mu + nu + mu * nu, gamma = mu * nu;
    auto p = resolve_mu_nu(alpha, gamma);
    CHECK(p.mu + p.nu == doctest::Approx(alpha - gamma).epsilon(1e-12));
    CHECK(p.mu * p.nu == doctest::Approx(gamma).epsilon(1e-12));
    CHECK(p.mu >= p.nu);
    CHECK(alpha_of(p) == doctest::Approx(alpha).epsilon(1e-12));
  }
}

TEST_CASE("invalid (alpha, gamma)") {
  CHECK_THROWS_AS(resolve_mu_nu(-1.0, 0.0), DomainError);
  CHECK_THROWS_AS(resolve_mu_nu(1.0, 1.0), DomainError);  // complex roots
  CHECK_THROWS_AS(resolve_mu_nu(std::nan(""), 1.0), DomainError);
}

TEST_CASE("validate_spec collects every violation") {
  WFamilySpec s;
  s.alpha = 1.0;
  s.gamma = 1.0;
  s.beta = 1.5;
  s.xi = 2.0;
  s.rho = 1.0;
  auto v = validate_spec(s);
  CHECK_FALSE(v.ok());
  CHECK(v.violations.size() == 4);

  WFamilySpec good{3.0, 1.0, -1.8, 0.5, 0.0};
  CHECK(validate_spec(good).ok());

  WFamilySpec zero{0.0, 0.0, 0.0, 0.0, 0.0};
  auto z = validate_spec(zero);
  CHECK(z.ok());
  CHECK(z.warnings.size() == 1);
}

TEST_CASE("power series evaluation and derivative") {
  auto g = PowerSeries::geometric(200);
  Complex z{0.3, -0.4};
  CHECK(std::abs(g.evaluate(z) - 1.0 / (1.0 - z)) < 1e-14);
  auto d = g.derivative();
  CHECK(d.order() == 199);
  CHECK(std::abs(d.evaluate(z) - 1.0 / ((1.0 - z) * (1.0 - z))) < 1e-13);

  auto id = PowerSeries::identity(10);
  CHECK(id.normalized());
  CHECK_FALSE(g.normalized());
  CHECK(id.evaluate(z) == z);
}

TEST_CASE("hadamard product multiplies coefficients") {
  std::vector<Complex> a{1.0, 2.0, 3.0}, b{4.0, 5.0};
  const auto h = hadamard(PowerSeries(a), PowerSeries(b));
  CHECK(h[0] == Complex(4.0));
  CHECK(h[1] == Complex(10.0));
  CHECK(h[2] == Complex(0.0));
}

TEST_CASE("tail estimate of the geometric series") {
  auto g = PowerSeries::geometric(100);
  // Exact tail: r^101 / (1 - r).
  double r = 0.9;
  CHECK(g.tail_estimate(r) == doctest::Approx(std::pow(r, 101) / (1 - r)).epsilon(1e-12));
}

TEST_CASE("truncation policy validation") {
  TruncationPolicy ok;
  CHECK_NOTHROW(ok.validate());
  TruncationPolicy bad{0, 1e-10};
  CHECK_THROWS_AS(bad.validate(), DomainError);
}
