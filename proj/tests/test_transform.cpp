#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "pascu/beta_solver.hpp"
#include "pascu/errors.hpp"
#include "pascu/transform.hpp"

using namespace pascu;

namespace {

const MuNuPair kOne{1.0, 1.0};

double sharp_beta(double xi) { return solve_beta(make_bernardi(0.0), kOne, xi).beta; }

}  // namespace

TEST_CASE("extremal coefficients") {
  // (1 + x w)/(1 + y w) = 1 + sum_{n>=1} (x - y)(-y)^{n-1} w^n, then divide by D(n).
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  for (MuNuPair p : {kOne, MuNuPair{2.0, 0.5}}) {
    for (int trial = 0; trial < 5; ++trial) {
      Complex x = std::polar(1.0, ang(rng)), y = std::polar(1.0, ang(rng));
      double beta = -0.7;
      auto f = extremal_function(beta, p, x, y, {200, 1e-10});
      CHECK(f[0] == Complex(0.0));
      CHECK(f[1] == Complex(1.0));
      for (int n = 1; n < 200; ++n) {
        Complex want = (1.0 - beta) * (x - y) * std::pow(-y, n - 1) / ((1.0 + p.mu * n) * (1.0 + p.nu * n));
        CHECK(std::abs(f[n + 1] - want) < 1e-13);
      }
    }
  }
  auto g = extremal_function(0.0, kOne, 1.0, -1.0, {50, 1e-10});
  for (int n = 1; n < 50; ++n) CHECK(g[n + 1].real() == doctest::Approx(2.0 / ((n + 1.0) * (n + 1.0))));
}

TEST_CASE("transform multiplies by moments") {
  auto f = PowerSeries::geometric(30);
  f[0] = 0.0;  // z/(1-z)
  auto F = apply_V(f, make_bernardi(0.0));
  for (int n = 0; n < 30; ++n) CHECK(F[n + 1].real() == doctest::Approx(1.0 / (n + 1.0)).epsilon(1e-12));
  // rho z + (1 - rho) V f
  auto G = apply_V_rho(f, make_bernardi(0.0), 0.25);
  CHECK(G[1].real() == doctest::Approx(1.0));
  CHECK(G[3].real() == doctest::Approx(0.75 / 3.0).epsilon(1e-12));
  auto bad = PowerSeries::geometric(10);
  CHECK_THROWS_AS(apply_V(bad, make_bernardi(0.0)), DomainError);
}

TEST_CASE("Pascu quotient of the half-plane map") {
  auto F = PowerSeries::geometric(400);
  F[0] = 0.0;  // z/(1-z)
  Complex z = 0.5;
  CHECK(std::abs(pascu_quotient(F, 1.0, z) - 3.0) < 1e-12);  // (1+z)/(1-z)
  CHECK(std::abs(pascu_quotient(F, 0.0, z) - 2.0) < 1e-12);  // 1/(1-z)
  // Blend at xi = 1/2: [z(zF')' + zF'] / [zF' + F] with zF' = z/(1-z)^2.
  Complex zf = z / ((1.0 - z) * (1.0 - z)), zzf = z * (1.0 + z) / std::pow(1.0 - z, 3);
  Complex want = (0.5 * zzf + 0.5 * zf) / (0.5 * zf + 0.5 * z / (1.0 - z));
  CHECK(std::abs(pascu_quotient(F, 0.5, z) - want) < 1e-12);
}

TEST_CASE("vanishing denominator is a domain error") {
  // F = z + z^2: zF' = z + 2 z^2 vanishes at z = -1/2.
  PowerSeries F(std::vector<Complex>{0.0, 1.0, 1.0});
  CHECK_THROWS_AS(pascu_quotient(F, 1.0, Complex(-0.5, 0.0)), DomainError);
}

TEST_CASE("membership at the sharp constant") {
  auto k = make_bernardi(0.0);
  for (double xi : {0.0, 0.5, 1.0}) {
    double b = sharp_beta(xi);
    auto F = apply_V(extremal_function(b, kOne, 1.0, -1.0), k);
    auto m = membership_min(F, xi);
    CAPTURE(xi);
    CHECK(m.pass);
    CHECK(m.min_re >= -1e-3);
    CHECK(m.functional == "pascu_quotient");
  }
}

TEST_CASE("membership fails well below the sharp constant") {
  auto k = make_bernardi(0.0);
  double b = sharp_beta(0.0) - 0.5;
  auto F = apply_V(extremal_function(b, kOne, 1.0, -1.0), k);
  auto m = membership_min(F, 0.0);
  CHECK_FALSE(m.pass);
  CHECK(m.min_re < 0.0);
}

TEST_CASE("generalized transform at its own sharp constant") {
  auto k = make_bernardi(0.0);
  double b = solve_beta_rho(k, kOne, 1.0, 0.5).beta;
  auto F = apply_V_rho(extremal_function(b, kOne, 1.0, -1.0), k, 0.5);
  CHECK(membership_min(F, 1.0).pass);
}

TEST_CASE("extremal function lies in the W class") {
  double beta = -1.816378;
  auto f = extremal_function(beta, kOne, 1.0, -1.0);
  auto m = w_membership(f, {3.0, 1.0, beta, 0.0, 0.0});
  CHECK(m.pass);
  REQUIRE(m.best_phi);
  CHECK(std::abs(std::remainder(*m.best_phi, 2.0 * std::numbers::pi)) < 1e-12);
  // H - beta = (1 - beta)(1 + z)/(1 - z) has real part (1 - beta)(1 - r^2)/|1 - z|^2 >= 0.
  CHECK(m.min_re >= 0.0);
}

TEST_CASE("sharpness margin") {
  double b0 = sharp_beta(0.0);
  CHECK(sharpness_margin(b0, b0) == 0.0);
  CHECK(sharpness_margin(b0 - 0.01, b0) < 0.0);
  CHECK(sharpness_margin(b0 + 0.01, b0) > 0.0);
}

TEST_CASE("default membership grid") {
  auto g = default_membership_grid();
  CHECK(g.radii.size() == 24);
  CHECK(g.angles.size() == 48);
  CHECK(g.radii.back() == doctest::Approx(0.95));
}
