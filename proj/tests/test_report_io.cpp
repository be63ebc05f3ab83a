#include <cmath>
#include <numbers>

#include "doctest.h"
#include "pascu/errors.hpp"
#include "pascu/report_io.hpp"

using namespace pascu;

namespace {

bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

void check_same(const Witness& a, const Witness& b) {
  CHECK(a.t == b.t);
  CHECK(a.t_next == b.t_next);
  CHECK(a.z == b.z);
  CHECK(a.eps == b.eps);
  CHECK(same(a.value, b.value));
}

void check_same(const ConditionResult& a, const ConditionResult& b) {
  CHECK(a.name == b.name);
  CHECK(a.verdict == b.verdict);
  CHECK(same(a.margin, b.margin));
  CHECK(a.note == b.note);
  REQUIRE(a.witness.has_value() == b.witness.has_value());
  if (a.witness) check_same(*a.witness, *b.witness);
}

}  // namespace

TEST_CASE("beta result round trip") {
  BetaResult r{-0.6449340668535033, -1.8163783304646404, 1.97e-10, BetaMethod::moments, 20};
  auto back = Json::parse(Json(r).dump()).get<BetaResult>();
  CHECK(back.x_value == r.x_value);
  CHECK(back.beta == r.beta);
  CHECK(back.err_estimate == r.err_estimate);
  CHECK(back.method == r.method);
  CHECK(back.terms == r.terms);
}

TEST_CASE("admissibility report round trip with NaN and complex witnesses") {
  AdmissibilityReport r;
  r.kernel = "komatu:c=-0.5,p=3";
  r.munu = {2.0, 0.5};
  r.xi = 0.3;
  ConditionResult a{"additional_cond", Verdict::not_applicable, std::nan(""), std::nullopt, "vacuous"};
  Witness w;
  w.t = 0.25;
  w.t_next = 0.3;
  w.value = -1e-3;
  ConditionResult b{"monotone_decreasing", Verdict::fail, -1e-3, w, ""};
  Witness wz;
  wz.z = std::complex<double>(-0.99, 1e-17);
  wz.eps = std::polar(1.0, 2.0);
  wz.value = 0.0012;
  ConditionResult c{"n_pi_nonneg", Verdict::pass, 0.0012, wz, "grid"};
  r.conditions = {a, b, c};
  r.notes = {"first", "second, with comma"};

  std::string text = Json(r).dump();
  auto j = Json::parse(text);
  CHECK(j["conditions"][0]["margin"].is_null());
  auto back = j.get<AdmissibilityReport>();
  CHECK(back.kernel == r.kernel);
  CHECK(back.munu.mu == r.munu.mu);
  CHECK(back.munu.nu == r.munu.nu);
  CHECK(back.xi == r.xi);
  CHECK(back.notes == r.notes);
  REQUIRE(back.conditions.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) check_same(back.conditions[i], r.conditions[i]);
  CHECK(Json(back).dump() == text);
}

TEST_CASE("membership and N_Pi round trip") {
  MembershipReport m;
  m.functional = "w_halfplane";
  m.min_re = 0.07884261884428892;
  m.argmin_r = 0.95;
  m.argmin_theta = std::numbers::pi;
  m.pass = true;
  m.tail_bound = 1e-12;
  m.boundary_limited = true;
  m.best_phi = 0.0;
  m.note = "x";
  auto mb = Json::parse(Json(m).dump()).get<MembershipReport>();
  CHECK(Json(mb) == Json(m));
  CHECK(mb.best_phi == m.best_phi);

  NPiResult n;
  n.min_value = 0.0013;
  n.argmin_z = {-0.99, 0.0};
  n.argmin_eps = {1.0, 0.0};
  n.exact_eps_min = 0.0012;
  n.exact_argmin_z = {0.1, 0.2};
  n.exact_argmin_eps = {0.0, -1.0};
  n.neglected_tail = 1e-40;
  n.evaluations = 1234;
  auto nb = Json::parse(Json(n).dump()).get<NPiResult>();
  CHECK(Json(nb) == Json(n));
  CHECK(nb.evaluations == 1234);
}

TEST_CASE("names") {
  CHECK(verdict_from_name("fail") == Verdict::fail);
  CHECK(method_from_name("rho_integral") == BetaMethod::rho_integral);
  CHECK_THROWS_AS(verdict_from_name("maybe"), DomainError);
}

TEST_CASE("csv quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
  CHECK(csv_row({"a", "b,c"}) == "a,\"b,c\"\r\n");
}

TEST_CASE("number formatting round-trips") {
  for (double v : {0.1, -1.8163783304646404, 1e-300, 123456789.0}) {
    CHECK(std::stod(format_number(v)) == v);
  }
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(format_number(-HUGE_VAL) == "-inf");
}
