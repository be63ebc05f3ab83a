#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "pascu/errors.hpp"
#include "pascu/kernel.hpp"
#include "pascu/kernel_config.hpp"

using namespace pascu;

namespace {

const double kT[] = {0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.8, 0.9, 0.95};

// int_t^1 x^{p-1} dx
double power_tail(double p, double t) { return p == 0.0 ? -std::log(t) : (1.0 - std::pow(t, p)) / p; }

// int_t^1 x^{p-1} log(1/x) dx
double power_log_tail(double p, double t) {
  if (p == 0.0) return 0.5 * std::log(t) * std::log(t);
  double tp = std::pow(t, p);
  return 1.0 / (p * p) + tp * std::log(t) / p - tp / (p * p);
}

// Bernardi: Lambda_nu(t) = (c+1) int_t^1 x^{c - 1/nu} dx.
double bernardi_lambda(double c, double nu, double t) { return (c + 1.0) * power_tail(c + 1.0 - 1.0 / nu, t); }

// Pi(t) = int_t^1 Lambda_nu(x) x^e dx with e = 1/nu - 1 - 1/mu.
double bernardi_pi(double c, double mu, double nu, double t) {
  const double k = c + 1.0 - 1.0 / nu;
  const double e = 1.0 / nu - 1.0 - 1.0 / mu;
  if (k == 0.0) return (c + 1.0) * power_log_tail(e + 1.0, t);
  return (c + 1.0) / k * (power_tail(e + 1.0, t) - power_tail(k + e + 1.0, t));
}

}  // namespace

TEST_CASE("normalizing constants") {
  CHECK(make_bernardi(0.3).norm_const() == doctest::Approx(1.3));
  CHECK(make_komatu(-0.5, 3.0).norm_const() == doctest::Approx(0.0625).epsilon(1e-14));
  CHECK(make_komatu(1.0, 2.5).norm_const() == doctest::Approx(std::pow(2.0, 2.5) / std::tgamma(2.5)));
  // Constant profile: 1 / B(B, C - A - B + 1).
  for (auto [A, B, C] : {std::array{0.0, 0.5, 3.0}, std::array{0.3, 0.8, 2.5}, std::array{-0.2, 0.4, 1.9}}) {
    auto k = make_hypergeom(A, B, C);
    CHECK(k.norm_const() == doctest::Approx(1.0 / std::beta(B, C - A - B + 1.0)).epsilon(1e-9));
  }
  // Komatu profile with C - A - B = p - 1: lambda = k t^{B-1} (log 1/t)^{p-1}, k = B^p / Gamma(p).
  auto kp = make_hypergeom(0.0, 0.5, 2.0, ProfileKind::komatu, 2.5);
  CHECK(kp.norm_const() == doctest::Approx(std::pow(0.5, 2.5) / std::tgamma(2.5)).epsilon(1e-9));
  // One more power of (1 - t): the mass is Gamma(p) (B^{-p} - (B+1)^{-p}).
  auto kq = make_hypergeom(0.0, 0.5, 3.0, ProfileKind::komatu, 2.5);
  double mass = std::tgamma(2.5) * (std::pow(0.5, -2.5) - std::pow(1.5, -2.5));
  CHECK(kq.norm_const() == doctest::Approx(1.0 / mass).epsilon(1e-9));
}

TEST_CASE("ab_power density") {
  CHECK(kernel_density(make_ab_power(0.0, 0.0), std::exp(-1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  auto k = make_ab_power(-0.5, 2.0);
  double t = 0.3;
  double want = 0.5 * 3.0 * std::pow(t, -0.5) * (1.0 - std::pow(t, 2.5)) / 2.5;
  CHECK(kernel_density(k, t) == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("moments against closed forms") {
  for (int n : {0, 1, 2, 5, 20, 100}) {
    CAPTURE(n);
    CHECK(moment_tau(make_bernardi(0.4), n) == doctest::Approx(1.4 / (1.4 + n)).epsilon(1e-10));
    CHECK(moment_tau(make_komatu(-0.5, 3.0), n) == doctest::Approx(std::pow(0.5 / (0.5 + n), 3)).epsilon(1e-9));
    CHECK(moment_tau(make_ab_power(-0.5, 2.0), n) ==
          doctest::Approx(0.5 * 3.0 / ((0.5 + n) * (3.0 + n))).epsilon(1e-9));
    CHECK(moment_tau(make_ab_power(0.5, 0.5), n) == doctest::Approx(std::pow(1.5 / (1.5 + n), 2)).epsilon(1e-9));
    double A = 0.0, B = 0.5, C = 3.0;
    CHECK(moment_tau(make_hypergeom(A, B, C), n) ==
          doctest::Approx(std::beta(B + n, C - A - B + 1.0) / std::beta(B, C - A - B + 1.0)).epsilon(1e-9));
  }
  auto all = moments(make_bernardi(0.0), 10);
  CHECK(all.size() == 11);
  CHECK(all[10] == doctest::Approx(1.0 / 11.0));
}

TEST_CASE("tabulated kernels") {
  auto flat = make_tabulated({0.0, 0.5, 1.0}, {1.0, 1.0, 1.0});
  for (int n : {0, 1, 7}) CHECK(moment_tau(flat, n) == doctest::Approx(1.0 / (n + 1.0)).epsilon(1e-12));
  auto ramp = make_tabulated({0.0, 1.0}, {0.0, 2.0});
  for (int n : {0, 1, 7}) CHECK(moment_tau(ramp, n) == doctest::Approx(2.0 / (n + 2.0)).epsilon(1e-12));
  CHECK_FALSE(ramp.warnings().empty());
  CHECK_THROWS_AS(make_tabulated({0.0, 0.4}, {1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(make_tabulated({0.0, 1.0}, {1.0, -1.0}), DomainError);
}

TEST_CASE("jets") {
  auto b = make_bernardi(0.7);
  double t = 0.4;
  auto j = b.jet(t);
  CHECK(j.value == doctest::Approx(1.7 * std::pow(t, 0.7)));
  CHECK(j.d1 == doctest::Approx(1.7 * 0.7 * std::pow(t, -0.3)));
  CHECK(j.d2 == doctest::Approx(1.7 * 0.7 * -0.3 * std::pow(t, -1.3)));

  // Central differences for the families with nontrivial derivatives.
  for (const Kernel& k : {make_komatu(-0.5, 3.0), make_ab_power(-0.5, 2.0), make_ab_power(0.3, 0.3),
                          make_hypergeom(0.0, 0.5, 3.0, ProfileKind::komatu, 3.0), make_hypergeom(0.2, 0.6, 3.1)}) {
    for (double x : {0.1, 0.5, 0.9}) {
      const double h = 1e-5;
      auto jx = k.jet(x);
      double d1 = (k.density(x + h) - k.density(x - h)) / (2 * h);
      double d2 = (k.density(x + h) - 2 * k.density(x) + k.density(x - h)) / (h * h);
      CAPTURE(std::string(family_name(k.family())));
      CAPTURE(x);
      CHECK(jx.d1 == doctest::Approx(d1).epsilon(1e-6));
      CHECK(jx.d2 == doctest::Approx(d2).epsilon(1e-3));
    }
  }
}

TEST_CASE("values at t = 1") {
  auto b = make_bernardi(0.5).at_one();
  CHECK(b.value == doctest::Approx(1.5));
  CHECK(b.d1 == doctest::Approx(0.75));
  auto ab = make_ab_power(-0.5, 2.0).at_one();
  CHECK(ab.value == 0.0);
  CHECK(ab.d1 == doctest::Approx(-1.5));
  auto ko = make_komatu(-0.5, 3.0).at_one();
  CHECK(ko.value == 0.0);
  CHECK(ko.d1 == 0.0);
}

TEST_CASE("Lambda and Pi against antiderivatives for the Bernardi kernel") {
  struct Case {
    double c, nu, mu;
  };
  for (Case cs : {Case{0.0, 1.0, 1.0}, Case{1.0, 1.0, 1.0}, Case{-0.5, 2.0, 1.0}, Case{0.3, 0.7, 2.0}}) {
    auto k = make_bernardi(cs.c);
    for (double t : kT) {
      CAPTURE(cs.c);
      CAPTURE(cs.nu);
      CAPTURE(t);
      CHECK(std::abs(capital_lambda(k, cs.nu, t) - bernardi_lambda(cs.c, cs.nu, t)) < 1e-8);
      CHECK(std::abs(capital_pi(k, {cs.mu, cs.nu}, t) - bernardi_pi(cs.c, cs.mu, cs.nu, t)) < 1e-8);
    }
  }
  CHECK(capital_pi(make_bernardi(0.0), {0.0, 1.0}, 0.5) == doctest::Approx(std::numbers::ln2).epsilon(1e-10));
  CHECK(capital_pi(make_bernardi(0.0), {1.0, 1.0}, 1.0) == 0.0);
}

TEST_CASE("single-integral Pi matches the nested definition") {
  for (const Kernel& k : {make_komatu(-0.5, 3.0), make_ab_power(-0.5, 2.2), make_hypergeom(0.0, 0.5, 3.0)}) {
    for (MuNuPair p : {MuNuPair{1.0, 1.0}, MuNuPair{2.0, 0.5}}) {
      for (double t : {0.01, 0.3, 0.8}) {
        CAPTURE(std::string(family_name(k.family())));
        CAPTURE(t);
        CHECK(capital_pi(k, p, t) == doctest::Approx(capital_pi_nested(k, p, t)).epsilon(1e-7));
      }
    }
  }
}

TEST_CASE("invalid kernels") {
  CHECK_THROWS_AS(make_bernardi(-1.0), DomainError);
  CHECK_THROWS_AS(make_komatu(-0.5, 1.0), DomainError);
  CHECK_THROWS_AS(make_ab_power(-1.5, 0.0), DomainError);
  CHECK_THROWS_AS(make_hypergeom(0.0, 0.0, 2.0), DomainError);
  CHECK_THROWS_AS(make_hypergeom(1.0, 0.5, 1.5), DomainError);
  CHECK_THROWS_AS(kernel_density(make_bernardi(0.0), 1.0), DomainError);
  CHECK_THROWS_AS(capital_lambda(make_bernardi(0.0), 0.0, 0.5), DomainError);
}

TEST_CASE("custom profile must be increasing and convex") {
  HypergeomParams p;
  p.A = 0.0;
  p.B = 0.5;
  p.C = 3.0;
  p.profile = ProfileKind::custom;
  p.custom = [](double u) { return ProfileJet{1.0 + u * u, 2.0 * u, 2.0}; };
  CHECK_NOTHROW(kernel_normalize(p));
  p.custom = [](double u) { return ProfileJet{2.0 - u, -1.0, 0.0}; };
  CHECK_THROWS_AS(kernel_normalize(p), DomainError);
}

TEST_CASE("kernel spec text round trip") {
  for (std::string s : {"bernardi:c=0.25", "komatu:c=-0.5,p=3", "ab_power:a=-0.5,b=2",
                        "hypergeom:A=0,B=0.5,C=3,profile=komatu,p=3", "hypergeom:A=0.1,B=0.5,C=3,profile=constant"}) {
    CAPTURE(s);
    auto params = parse_kernel_spec(s);
    auto again = render_kernel_spec(params);
    CHECK(render_kernel_spec(parse_kernel_spec(again)) == again);
    auto k1 = kernel_normalize(params), k2 = kernel_normalize(parse_kernel_spec(again));
    CHECK(k1.family() == k2.family());
    CHECK(k1.norm_const() == k2.norm_const());
  }
  CHECK(std::holds_alternative<AbPowerParams>(parse_kernel_spec("ab:a=0,b=1")));
  auto tab = parse_kernel_spec("tabulated:t=0;0.5;1,lambda=1;1;1");
  CHECK(std::get<TabulatedParams>(tab).t.size() == 3);
  CHECK_THROWS_AS(parse_kernel_spec("bernardi:c=0,d=1"), DomainError);
  CHECK_THROWS_AS(parse_kernel_spec("bernardi"), DomainError);
  CHECK_THROWS_AS(parse_kernel_spec("bernardi:c=abc"), DomainError);
  CHECK_THROWS_AS(parse_kernel_spec("nope:c=1"), DomainError);
}

TEST_CASE("key-value configuration") {
  std::istringstream in("# comment\nkernel.family=komatu\nkernel.c=-0.5\n\nkernel.p=3\nspec.xi=0.5\nspec.xi=0.25\n");
  auto kv = parse_key_value(in);
  CHECK(kv.at("spec.xi") == "0.25");
  auto spec = kernel_spec_from_config(kv);
  auto k = kernel_normalize(parse_kernel_spec(spec));
  CHECK(k.family() == KernelFamily::komatu);
  CHECK(k.norm_const() == doctest::Approx(0.0625));

  std::istringstream bad("kernel.family\n");
  CHECK_THROWS_AS(parse_key_value(bad), DomainError);
  std::istringstream orphan("kernel.c=1\n");
  CHECK_THROWS_AS(kernel_spec_from_config(parse_key_value(orphan)), DomainError);
  CHECK(kernel_spec_from_config({}).empty());
}
