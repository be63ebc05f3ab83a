#include "pascu/report_io.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "pascu/errors.hpp"

namespace pascu {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double read_number(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return kNaN;
  return it->get<double>();
}

Json complex_json(std::complex<double> z) { return Json::array({number(z.real()), number(z.imag())}); }

std::complex<double> read_complex(const Json& j) {
  auto part = [](const Json& v) { return v.is_null() ? kNaN : v.get<double>(); };
  return {part(j.at(0)), part(j.at(1))};
}

}  // namespace

Verdict verdict_from_name(const std::string& name) {
  if (name == "pass") return Verdict::pass;
  if (name == "fail") return Verdict::fail;
  if (name == "not_applicable") return Verdict::not_applicable;
  throw DomainError("unknown verdict '" + name + "'");
}

BetaMethod method_from_name(const std::string& name) {
  if (name == "integral") return BetaMethod::integral;
  if (name == "moments") return BetaMethod::moments;
  if (name == "rho_integral") return BetaMethod::rho_integral;
  throw DomainError("unknown beta method '" + name + "'");
}

void to_json(Json& j, const BetaResult& r) {
  j = Json{{"x_value", number(r.x_value)},
           {"beta", number(r.beta)},
           {"err_estimate", number(r.err_estimate)},
           {"method", method_name(r.method)},
           {"terms", r.terms}};
}

void from_json(const Json& j, BetaResult& r) {
  r.x_value = read_number(j, "x_value");
  r.beta = read_number(j, "beta");
  r.err_estimate = read_number(j, "err_estimate");
  r.method = method_from_name(j.at("method").get<std::string>());
  r.terms = j.value("terms", 0);
}

void to_json(Json& j, const Witness& w) {
  j = Json::object();
  if (w.t) j["t"] = number(*w.t);
  if (w.t_next) j["t_next"] = number(*w.t_next);
  if (w.z) j["z"] = complex_json(*w.z);
  if (w.eps) j["eps"] = complex_json(*w.eps);
  j["value"] = number(w.value);
}

void from_json(const Json& j, Witness& w) {
  w = Witness{};
  if (j.contains("t")) w.t = read_number(j, "t");
  if (j.contains("t_next")) w.t_next = read_number(j, "t_next");
  if (j.contains("z")) w.z = read_complex(j.at("z"));
  if (j.contains("eps")) w.eps = read_complex(j.at("eps"));
  w.value = read_number(j, "value");
}

void to_json(Json& j, const ConditionResult& r) {
  j = Json{{"name", r.name}, {"verdict", verdict_name(r.verdict)}, {"margin", number(r.margin)}, {"note", r.note}};
  j["witness"] = r.witness ? Json(*r.witness) : Json(nullptr);
}

void from_json(const Json& j, ConditionResult& r) {
  r.name = j.at("name").get<std::string>();
  r.verdict = verdict_from_name(j.at("verdict").get<std::string>());
  r.margin = read_number(j, "margin");
  r.note = j.value("note", "");
  r.witness.reset();
  if (j.contains("witness") && !j.at("witness").is_null()) r.witness = j.at("witness").get<Witness>();
}

void to_json(Json& j, const AdmissibilityReport& r) {
  j = Json{{"kernel", r.kernel},
           {"mu", number(r.munu.mu)},
           {"nu", number(r.munu.nu)},
           {"xi", number(r.xi)},
           {"conditions", r.conditions},
           {"notes", r.notes}};
}

void from_json(const Json& j, AdmissibilityReport& r) {
  r.kernel = j.at("kernel").get<std::string>();
  r.munu = {read_number(j, "mu"), read_number(j, "nu")};
  r.xi = read_number(j, "xi");
  r.conditions = j.at("conditions").get<std::vector<ConditionResult>>();
  r.notes = j.at("notes").get<std::vector<std::string>>();
}

void to_json(Json& j, const MembershipReport& r) {
  j = Json{{"functional", r.functional},
           {"min_re", number(r.min_re)},
           {"argmin_r", number(r.argmin_r)},
           {"argmin_theta", number(r.argmin_theta)},
           {"verdict", r.pass ? "pass" : "fail"},
           {"tol", number(r.tol)},
           {"tail_bound", number(r.tail_bound)},
           {"boundary_limited", r.boundary_limited},
           {"note", r.note}};
  j["best_phi"] = r.best_phi ? number(*r.best_phi) : Json(nullptr);
}

void from_json(const Json& j, MembershipReport& r) {
  r.functional = j.at("functional").get<std::string>();
  r.min_re = read_number(j, "min_re");
  r.argmin_r = read_number(j, "argmin_r");
  r.argmin_theta = read_number(j, "argmin_theta");
  r.pass = verdict_from_name(j.at("verdict").get<std::string>()) == Verdict::pass;
  r.tol = read_number(j, "tol");
  r.tail_bound = read_number(j, "tail_bound");
  r.boundary_limited = j.at("boundary_limited").get<bool>();
  r.note = j.value("note", "");
  r.best_phi.reset();
  if (j.contains("best_phi") && !j.at("best_phi").is_null()) r.best_phi = j.at("best_phi").get<double>();
}

void to_json(Json& j, const NPiResult& r) {
  j = Json{{"min_value", number(r.min_value)},
           {"argmin_z", complex_json(r.argmin_z)},
           {"argmin_eps", complex_json(r.argmin_eps)},
           {"exact_eps_min", number(r.exact_eps_min)},
           {"exact_argmin_z", complex_json(r.exact_argmin_z)},
           {"exact_argmin_eps", complex_json(r.exact_argmin_eps)},
           {"neglected_tail", number(r.neglected_tail)},
           {"evaluations", r.evaluations}};
}

void from_json(const Json& j, NPiResult& r) {
  r.min_value = read_number(j, "min_value");
  r.argmin_z = read_complex(j.at("argmin_z"));
  r.argmin_eps = read_complex(j.at("argmin_eps"));
  r.exact_eps_min = read_number(j, "exact_eps_min");
  r.exact_argmin_z = read_complex(j.at("exact_argmin_z"));
  r.exact_argmin_eps = read_complex(j.at("exact_argmin_eps"));
  r.neglected_tail = read_number(j, "neglected_tail");
  r.evaluations = j.at("evaluations").get<std::size_t>();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + csv_field(fields[i]);
  return out + "\r\n";
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  for (int prec = 6; prec <= 17; ++prec) {
    std::ostringstream os;
    os.precision(prec);
    os << v;
    if (std::stod(os.str()) == v) return os.str();
  }
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace pascu
