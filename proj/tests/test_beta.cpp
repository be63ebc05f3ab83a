#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "pascu/beta_solver.hpp"
#include "pascu/errors.hpp"

using namespace pascu;

namespace {

// For bernardi(c=0), mu = nu = 1: int g = pi^2/6 - 1 and int (2q - 1) = 2 ln 2 - 1.
double x_closed_form(double xi) {
  using std::numbers::pi;
  return 1.0 - 2.0 * (1.0 - xi) * (pi * pi / 12.0) - 2.0 * xi * std::numbers::ln2;
}

struct Config {
  MuNuPair munu;
  double xi;
};

const std::vector<Config> kConfigs = {{{1.0, 1.0}, 0.0}, {{2.0, 0.5}, 0.5}, {{3.0, 2.0}, 1.0}};

std::vector<Kernel> families() {
  return {make_bernardi(0.5), make_komatu(-0.5, 3.0), make_ab_power(-0.5, 2.2), make_hypergeom(0.0, 0.5, 3.0)};
}

}  // namespace

TEST_CASE("X matches the closed form for bernardi(0), mu = nu = 1") {
  auto k = make_bernardi(0.0);
  for (double xi : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    CAPTURE(xi);
    auto r = solve_beta(k, {1.0, 1.0}, xi);
    CHECK(std::abs(r.x_value - x_closed_form(xi)) < 1e-8);
    CHECK(r.beta == doctest::Approx(x_closed_form(xi) / (1.0 + x_closed_form(xi))).epsilon(1e-8));
    CHECK(r.method == BetaMethod::integral);
  }
}

TEST_CASE("reference values of the sharp constant") {
  auto k = make_bernardi(0.0);
  CHECK(std::abs(solve_beta(k, {1.0, 1.0}, 0.0).beta - (-1.816378)) < 1e-4);
  CHECK(std::abs(solve_beta(k, {1.0, 1.0}, 1.0).beta - (-0.629445)) < 1e-4);
}

TEST_CASE("integral and moment forms agree") {
  for (const auto& k : families()) {
    for (const auto& c : kConfigs) {
      CAPTURE(std::string(family_name(k.family())));
      CAPTURE(c.xi);
      auto a = solve_beta(k, c.munu, c.xi);
      auto b = beta_from_moments(k, c.munu, c.xi);
      CHECK(std::abs(a.beta - b.beta) < 1e-6);
      CHECK(b.method == BetaMethod::moments);
      CHECK(b.terms > 0);
    }
  }
}

TEST_CASE("rho form at rho = 0 reproduces the plain constant") {
  QuadratureSpec fine{1e-13, 1e-15, 4000};
  TruncationPolicy tight{400, 1e-14};
  for (const auto& k : families()) {
    for (const auto& c : kConfigs) {
      CAPTURE(std::string(family_name(k.family())));
      CAPTURE(c.xi);
      auto a = solve_beta(k, c.munu, c.xi, fine, tight);
      auto r = solve_beta_rho(k, c.munu, c.xi, 0.0, fine, tight);
      CHECK(std::abs(a.beta - r.beta) < 1e-9);
      // The rho integral is (1 + X)/2.
      CHECK(r.x_value == doctest::Approx(0.5 * (1.0 + a.x_value)).epsilon(1e-10));
    }
  }
}

TEST_CASE("rho form closed value") {
  // I = (1 + X)/2 = 1 - ln 2 at xi = 1, so beta = 1 - 1/(2 I (1 - rho)).
  auto r = solve_beta_rho(make_bernardi(0.0), {1.0, 1.0}, 1.0, 0.5);
  double I = 1.0 - std::numbers::ln2;
  CHECK(r.beta == doctest::Approx(1.0 - 1.0 / I).epsilon(1e-10));
  CHECK(r.beta == doctest::Approx(-2.258891).epsilon(1e-6));
  CHECK(r.method == BetaMethod::rho_integral);
}

TEST_CASE("rho rescales 1 - beta") {
  // 1 - beta_rho = (1 - beta_0)/(1 - rho).
  auto k = make_komatu(-0.5, 3.0);
  double b0 = solve_beta_rho(k, {1.0, 1.0}, 0.5, 0.0).beta;
  for (double rho : {0.2, 0.4, 0.6}) {
    double b = solve_beta_rho(k, {1.0, 1.0}, 0.5, rho).beta;
    CHECK(1.0 - b == doctest::Approx((1.0 - b0) / (1.0 - rho)).epsilon(1e-12));
  }
}

TEST_CASE("beta is monotone in c for the Bernardi family") {
  // Larger c pushes kernel mass toward t = 1 where the bracket is most negative.
  double prev = -HUGE_VAL;
  for (double c = -0.9; c <= 1.0; c += 0.1) {
    double b = solve_beta(make_bernardi(c), {1.0, 1.0}, 0.5).beta;
    CHECK(b > prev);
    prev = b;
  }
}

TEST_CASE("threshold conversion") {
  CHECK(beta_from_x(0.0) == 0.0);
  CHECK(beta_from_x(-0.5) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(beta_from_x(-1.0), SolverError);
  CHECK_THROWS_AS(beta_from_x(-2.0), SolverError);
}

TEST_CASE("solver preconditions") {
  auto k = make_bernardi(0.0);
  CHECK_THROWS_AS(solve_beta(k, {1.0, 1.0}, 1.5), DomainError);
  CHECK_THROWS_AS(solve_beta_rho(k, {1.0, 1.0}, 0.5, 1.0), DomainError);
  CHECK(std::string(method_name(BetaMethod::moments)) == "moments");
}
