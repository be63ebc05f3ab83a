#include "pascu/kernel_config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "pascu/errors.hpp"

namespace pascu {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

// Shortest form that reads back to the same double.
std::string num(double v) {
  std::ostringstream os;
  for (int prec = 6; prec <= 17; ++prec) {
    os.str("");
    os.precision(prec);
    os << v;
    if (std::stod(os.str()) == v) break;
  }
  return os.str();
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ';')) out.push_back(parse_number(key, item));
  return out;
}

TabulatedParams read_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open tabulated kernel file " + path);
  TabulatedParams p;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream is(line);
    double t, v;
    if (!(is >> t >> v)) throw DomainError(path + ":" + std::to_string(lineno) + ": expected two numbers");
    p.t.push_back(t);
    p.lambda.push_back(v);
  }
  return p;
}

}  // namespace

double parse_number(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) throw DomainError("missing value for " + key);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE) {
    throw DomainError("invalid number for " + key + ": '" + s + "'");
  }
  return v;
}

KernelParams parse_kernel_spec(const std::string& text) {
  const std::string spec = trim(text);
  const auto colon = spec.find(':');
  const std::string family = trim(spec.substr(0, colon));
  std::map<std::string, std::string> kv;
  if (colon != std::string::npos) {
    for (const auto& item : split(spec.substr(colon + 1), ',')) {
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw DomainError("kernel parameter '" + item + "' is not key=value");
      kv[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
    }
  }

  std::set<std::string> allowed;
  auto get = [&](const std::string& key, std::optional<double> fallback = std::nullopt) {
    allowed.insert(key);
    const auto it = kv.find(key);
    if (it == kv.end()) {
      if (fallback) return *fallback;
      throw DomainError("kernel " + family + " needs parameter " + key);
    }
    return parse_number("kernel." + key, it->second);
  };
  auto reject_unknown = [&] {
    for (const auto& [k, v] : kv) {
      if (!allowed.count(k)) throw DomainError("unknown parameter '" + k + "' for kernel " + family);
    }
  };

  KernelParams out;
  if (family == "bernardi") {
    out = BernardiParams{get("c")};
  } else if (family == "komatu") {
    out = KomatuParams{get("c"), get("p")};
  } else if (family == "ab_power" || family == "ab") {
    out = AbPowerParams{get("a"), get("b")};
  } else if (family == "hypergeom") {
    HypergeomParams h;
    h.A = get("A");
    h.B = get("B");
    h.C = get("C");
    allowed.insert("profile");
    const auto it = kv.find("profile");
    const std::string prof = it == kv.end() ? "constant" : it->second;
    if (prof == "constant") {
      h.profile = ProfileKind::constant;
    } else if (prof == "komatu") {
      h.profile = ProfileKind::komatu;
      h.p = get("p");
    } else {
      throw DomainError("unknown hypergeom profile '" + prof + "' (constant or komatu)");
    }
    out = std::move(h);
  } else if (family == "tabulated") {
    allowed.insert("file");
    allowed.insert("t");
    allowed.insert("lambda");
    if (kv.count("file")) {
      out = read_samples(kv["file"]);
    } else {
      if (!kv.count("t") || !kv.count("lambda")) throw DomainError("tabulated kernel needs file= or t= and lambda=");
      out = TabulatedParams{parse_list("kernel.t", kv["t"]), parse_list("kernel.lambda", kv["lambda"])};
    }
  } else {
    throw DomainError("unknown kernel family '" + family +
                      "' (bernardi, komatu, ab_power, hypergeom, tabulated)");
  }
  reject_unknown();
  return out;
}

std::string render_kernel_spec(const KernelParams& params) {
  return std::visit(
      [](const auto& p) -> std::string {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, BernardiParams>) {
          return "bernardi:c=" + num(p.c);
        } else if constexpr (std::is_same_v<P, KomatuParams>) {
          return "komatu:c=" + num(p.c) + ",p=" + num(p.p);
        } else if constexpr (std::is_same_v<P, AbPowerParams>) {
          return "ab_power:a=" + num(p.a) + ",b=" + num(p.b);
        } else if constexpr (std::is_same_v<P, HypergeomParams>) {
          std::string s = "hypergeom:A=" + num(p.A) + ",B=" + num(p.B) + ",C=" + num(p.C);
          if (p.profile == ProfileKind::komatu) s += ",profile=komatu,p=" + num(p.p);
          if (p.profile == ProfileKind::custom) s += ",profile=custom";
          return s;
        } else {
          std::string t, l;
          for (std::size_t i = 0; i < p.t.size(); ++i) {
            t += (i ? ";" : "") + num(p.t[i]);
            l += (i ? ";" : "") + num(p.lambda[i]);
          }
          return "tabulated:t=" + t + ",lambda=" + l;
        }
      },
      params);
}

std::map<std::string, std::string> parse_key_value(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || trim(line.substr(0, eq)).empty()) {
      throw DomainError("config line " + std::to_string(lineno) + ": expected key=value");
    }
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

std::string kernel_spec_from_config(const std::map<std::string, std::string>& kv) {
  std::string family;
  std::string params;
  for (const auto& [k, v] : kv) {
    if (k.rfind("kernel.", 0) != 0) continue;
    const std::string name = k.substr(7);
    if (name == "family") {
      family = v;
    } else {
      params += (params.empty() ? "" : ",") + name + "=" + v;
    }
  }
  if (family.empty()) {
    if (!params.empty()) throw DomainError("config has kernel parameters but no kernel.family");
    return "";
  }
  return params.empty() ? family : family + ":" + params;
}

}  // namespace pascu
