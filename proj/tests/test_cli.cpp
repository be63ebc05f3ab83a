#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "pascu/report_io.hpp"

using namespace pascu;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("beta reproduces the reference constants") {
  auto r0 = run({"beta", "--kernel", "bernardi:c=0", "--alpha", "3", "--gamma", "1", "--xi", "0", "--format", "json"});
  REQUIRE(r0.code == 0);
  auto j0 = Json::parse(r0.out);
  CHECK(std::abs(j0["integral"]["beta"].get<double>() - (-1.816378)) < 1e-4);
  CHECK(j0["cross_check_diff"].get<double>() < 1e-6);

  auto r1 = run({"beta", "--kernel", "bernardi:c=0", "--alpha", "3", "--gamma", "1", "--xi", "1", "--rho", "0.5",
                 "--format", "json"});
  REQUIRE(r1.code == 0);
  auto j1 = Json::parse(r1.out);
  CHECK(std::abs(j1["integral"]["beta"].get<double>() - (-0.629445)) < 1e-4);
  CHECK(std::abs(j1["rho_form"]["beta"].get<double>() - (-2.258891)) < 1e-5);

  auto text = run({"beta", "--kernel", "bernardi:c=0", "--alpha", "3", "--gamma", "1", "--xi", "0"});
  CHECK(text.out.find("beta        -1.8163783") != std::string::npos);
  CHECK(text.out.find("moments") != std::string::npos);
}

TEST_CASE("csv output carries the schema line") {
  auto r = run({"beta", "--kernel", "bernardi:c=0", "--alpha", "3", "--gamma", "1", "--xi", "0", "--format", "csv"});
  REQUIRE(r.code == 0);
  auto l = lines(r.out);
  REQUIRE(l.size() == 4);
  CHECK(l[0] == "# schema=1\r");
  CHECK(l[1].rfind("kernel,alpha,gamma", 0) == 0);
}

TEST_CASE("admissible exit status follows the verdicts") {
  auto ok = run({"admissible", "--kernel", "bernardi:c=0", "--alpha", "3", "--gamma", "1", "--xi", "1"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("overall pass") != std::string::npos);

  auto over = run({"admissible", "--kernel", "bernardi:c=0.4", "--alpha", "3", "--gamma", "1", "--xi", "1",
                   "--skip-n-pi", "--format", "json"});
  CHECK(over.code == 1);
  auto report = Json::parse(over.out).get<AdmissibilityReport>();
  CHECK(report.get("range_closed_form").verdict == Verdict::fail);

  auto komatu = run({"admissible", "--kernel", "komatu:c=-0.5,p=3", "--alpha", "3", "--gamma", "1", "--xi", "0.5"});
  CHECK(komatu.code == 0);
}

TEST_CASE("admissible json round-trips") {
  auto r = run({"admissible", "--kernel", "komatu:c=-0.5,p=3", "--alpha", "3", "--gamma", "1", "--xi", "0.5",
                "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  auto report = j.get<AdmissibilityReport>();
  CHECK(Json(report) == j);
}

TEST_CASE("verify prints both certificates") {
  auto sharp = run({"verify", "--kernel", "bernardi:c=0", "--alpha", "3", "--gamma", "1", "--xi", "0", "--format",
                    "json"});
  REQUIRE(sharp.code == 0);
  auto j = Json::parse(sharp.out);
  CHECK(j["membership"]["verdict"] == "pass");
  CHECK(j["n_pi"]["min_value"].get<double>() >= -1e-3);
  CHECK(j["sharpness_margin"].get<double>() == 0.0);

  double b = j["beta_sharp"].get<double>() - 0.5;
  auto below = run({"verify", "--kernel", "bernardi:c=0", "--alpha", "3", "--gamma", "1", "--xi", "0", "--beta",
                    std::to_string(b), "--format", "json"});
  CHECK(below.code == 1);
  CHECK(Json::parse(below.out)["sharpness_margin"].get<double>() < 0.0);

  auto rho = run({"verify", "--kernel", "bernardi:c=0", "--alpha", "3", "--gamma", "1", "--xi", "1", "--rho", "0.5"});
  CHECK(rho.code == 0);
}

TEST_CASE("reproduce passes") {
  auto r = run({"reproduce"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("Informational") != std::string::npos);
  auto j = Json::parse(run({"reproduce", "--format", "json"}).out);
  CHECK(j["all_pass"].get<bool>());
  CHECK(j["rows"].size() >= 20);
}

TEST_CASE("sweep sizes") {
  auto c = run({"sweep", "--kernel", "bernardi:c=0", "--alpha", "3", "--gamma", "1", "--xi", "0.5", "--skip-n-pi",
                "--sweep", "c=-0.9:1:0.05"});
  REQUIRE(c.code == 0);
  auto l = lines(c.out);
  CHECK(l[0] == "# schema=1\r");
  CHECK(l.size() == 2 + 39);

  auto xi = run({"sweep", "--kernel", "komatu:c=-0.5,p=3", "--alpha", "3", "--gamma", "1", "--skip-n-pi", "--sweep",
                 "xi=0:1:0.1"});
  REQUIRE(xi.code == 0);
  auto lx = lines(xi.out);
  CHECK(lx.size() == 2 + 11);
  CHECK(lx[1].find("beta_trend") != std::string::npos);

  auto two = run({"sweep", "--kernel", "bernardi:c=0", "--alpha", "3", "--gamma", "1", "--skip-n-pi", "--sweep",
                  "xi=0:1:0.5", "--sweep", "c=0:0.4:0.2", "--format", "json"});
  REQUIRE(two.code == 0);
  CHECK(Json::parse(two.out)["rows"].size() == 9);
}

TEST_CASE("sweep refusals") {
  auto empty = run({"sweep", "--kernel", "bernardi:c=0", "--alpha", "3", "--gamma", "1", "--xi", "0.5", "--sweep",
                    "c=1:0:0.1"});
  CHECK(empty.code == 2);
  auto huge = run({"sweep", "--kernel", "bernardi:c=0", "--alpha", "3", "--gamma", "1", "--sweep", "xi=0:1:1e-4",
                   "--sweep", "c=0:1:1e-3"});
  CHECK(huge.code == 2);
  CHECK(huge.err.find("1e6") != std::string::npos);
  auto three = run({"sweep", "--kernel", "bernardi:c=0", "--alpha", "3", "--gamma", "1", "--sweep", "xi=0:1:0.5",
                    "--sweep", "c=0:1:0.5", "--sweep", "rho=0:0.5:0.5"});
  CHECK(three.code == 2);
  auto none = run({"sweep", "--kernel", "bernardi:c=0", "--alpha", "3", "--gamma", "1", "--xi", "0"});
  CHECK(none.code == 2);
}

TEST_CASE("input errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"beta", "--kernel", "nope:c=1", "--alpha", "3", "--gamma", "1", "--xi", "0"}).code == 2);
  CHECK(run({"beta", "--kernel", "bernardi:c=0", "--alpha", "3", "--xi", "0"}).code == 2);
  CHECK(run({"beta", "--kernel", "bernardi:c=0", "--alpha", "3", "--gamma", "1", "--xi", "2"}).code == 2);
  CHECK(run({"beta", "--kernel", "bernardi:c=0", "--alpha", "3", "--gamma", "1", "--xi", "x"}).code == 2);
  CHECK(run({"beta", "--kernel", "bernardi:c=0", "--alpha", "3", "--gamma", "1", "--xi", "0", "--format", "xml"})
            .code == 2);
  CHECK(run({"beta", "--unknown"}).code == 2);
}

TEST_CASE("numeric failures exit with 3") {
  auto r = run({"beta", "--kernel", "bernardi:c=0", "--alpha", "3", "--gamma", "1", "--xi", "0", "--order", "8"});
  CHECK(r.code == 3);
  CHECK(r.err.find("numeric failure") != std::string::npos);
}

TEST_CASE("help exits with 0") {
  auto r = run({"sweep", "--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("beta_trend") != std::string::npos);
}

TEST_CASE("config file with flag overrides") {
  std::string path = "test_cli_config.txt";
  {
    std::ofstream f(path);
    f << "# reference setup\nkernel.family=bernardi\nkernel.c=0\nspec.alpha=3\nspec.gamma=1\nspec.xi=1\n"
         "output.format=json\n";
  }
  auto from_file = Json::parse(run({"beta", "--config", path}).out);
  CHECK(std::abs(from_file["integral"]["beta"].get<double>() - (-0.629445)) < 1e-4);
  auto overridden = Json::parse(run({"beta", "--config", path, "--xi", "0"}).out);
  CHECK(std::abs(overridden["integral"]["beta"].get<double>() - (-1.816378)) < 1e-4);
  CHECK(run({"beta", "--config", "does-not-exist.txt"}).code == 2);
  std::remove(path.c_str());
}

TEST_CASE("out writes a file") {
  std::string path = "test_cli_out.json";
  auto r = run({"beta", "--kernel", "bernardi:c=0", "--alpha", "3", "--gamma", "1", "--xi", "0", "--format", "json",
                "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  auto j = Json::parse(in);
  CHECK(j["command"] == "beta");
  in.close();
  std::remove(path.c_str());
}

TEST_CASE("mu assignment override") {
  auto max_rule = Json::parse(
      run({"beta", "--kernel", "bernardi:c=0", "--alpha", "5", "--gamma", "2", "--xi", "0", "--format", "json"}).out);
  auto unit = Json::parse(run({"beta", "--kernel", "bernardi:c=0", "--alpha", "5", "--gamma", "2", "--xi", "0",
                                "--format", "json", "--mu-assignment", "unit"})
                               .out);
  CHECK(max_rule["mu"].get<double>() == doctest::Approx(2.0));
  CHECK(unit["mu"].get<double>() == doctest::Approx(1.0));
  // beta is symmetric in (mu, nu) at xi = 0.
  CHECK(max_rule["integral"]["beta"].get<double>() ==
        doctest::Approx(unit["integral"]["beta"].get<double>()).epsilon(1e-9));
}
