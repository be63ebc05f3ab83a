#include "pascu/admissibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pascu/errors.hpp"

namespace pascu {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::not_applicable: return "not_applicable";
  }
  return "unknown";
}

const char* ab_case_name(AbCase c) {
  switch (c) {
    case AbCase::none: return "none";
    case AbCase::i: return "i";
    case AbCase::ii: return "ii";
    case AbCase::iii: return "iii";
  }
  return "unknown";
}

const ConditionResult& AdmissibilityReport::get(const std::string& name) const {
  for (const auto& c : conditions) {
    if (c.name == name) return c;
  }
  throw DomainError("no condition named " + name);
}

bool AdmissibilityReport::all_applicable_pass() const {
  return std::none_of(conditions.begin(), conditions.end(),
                      [](const ConditionResult& c) { return c.verdict == Verdict::fail; });
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kIneqTol = 1e-9;
constexpr double kRangeTol = 1e-12;

std::string num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

ConditionResult not_applicable(const char* name, std::string note) {
  ConditionResult r;
  r.name = name;
  r.verdict = Verdict::not_applicable;
  r.margin = kNaN;
  r.note = std::move(note);
  return r;
}

// Closed-form range verdict from a list of slacks that must be positive
// (strict) or nonnegative (non-strict).
struct Slack {
  double value;
  bool strict;
  const char* label;
};

ConditionResult range_from_slacks(const char* name, const std::vector<Slack>& slacks) {
  ConditionResult r;
  r.name = name;
  double worst = HUGE_VAL;
  std::string violated;
  for (const auto& s : slacks) {
    worst = std::min(worst, s.value);
    const bool ok = s.strict ? s.value > 0.0 : s.value >= -kRangeTol;
    if (!ok) violated += (violated.empty() ? "" : "; ") + std::string(s.label);
  }
  r.margin = worst;
  if (violated.empty()) {
    r.verdict = Verdict::pass;
  } else {
    r.verdict = Verdict::fail;
    r.witness = Witness{};
    r.witness->value = worst;
    r.note = "violated: " + violated;
  }
  return r;
}

void require_positive_mu_nu(const MuNuPair& m) {
  if (!(m.mu > 0.0) || !(m.nu > 0.0)) throw DomainError("condition needs mu > 0 and nu > 0");
}

}  // namespace

double bernardi_c_bound(const MuNuPair& munu, double xi) {
  const double a = 1.0 + 1.0 / munu.mu - 1.0 / munu.nu;
  const double b = (1.0 + 1.0 / munu.mu - xi) / (1.0 + 2.0 * xi);
  return std::min(a, b);
}

ConditionResult check_range_bernardi(double c, const MuNuPair& munu, double xi) {
  if (!(munu.mu >= 1.0 && munu.nu >= munu.mu)) {
    return not_applicable("range_closed_form", "hypothesis nu >= mu >= 1 not met");
  }
  const double bound = bernardi_c_bound(munu, xi);
  ConditionResult r = range_from_slacks(
      "range_closed_form", {{c + 1.0, true, "c > -1"}, {bound - c, false, "c <= bound"}});
  r.note = (r.note.empty() ? "" : r.note + "; ") + "bound=" + num(bound);
  return r;
}

ConditionResult check_range_bernardi_gamma0(double c, double alpha, double xi) {
  if (!(xi > 0.0 && xi < 1.0)) {
    return not_applicable("range_closed_form", "gamma = 0 range covers 0 < xi < 1 only");
  }
  return range_from_slacks("range_closed_form", {{c - (1.0 + 1.0 / alpha), true, "c > 1 + 1/alpha"},
                                                  {xi - alpha, false, "xi >= alpha"}});
}

ConditionResult check_range_hypergeom(double A, double B, double C, const MuNuPair& munu, double) {
  return range_from_slacks("range_closed_form", {{1.0 - B, true, "B < 1"},
                                                 {munu.mu - 1.0, false, "mu >= 1"},
                                                 {2.0 + 1.0 / munu.mu - B, true, "B < 2 + 1/mu"},
                                                 {C - A - 1.0 - B, true, "B < C - A - 1"}});
}

AbRangeResult check_range_ab(double a, double b, const MuNuPair& munu) {
  AbRangeResult out;
  if (!(munu.mu > 0.0)) {
    out.result = not_applicable("range_closed_form", "needs mu > 0");
    return out;
  }
  const double inv = 1.0 / munu.mu;
  auto strict_min = [](std::initializer_list<double> v) { return std::min(v); };
  double m = -HUGE_VAL;
  if (b > a) {
    m = strict_min({a + 1.0, -a, inv - (b + a - 1.0), (b - 1.0) - inv});
    out.matched = m > 0.0 ? AbCase::i : AbCase::none;
  } else if (b < a) {
    m = strict_min({b + 1.0, -b, inv - (b + a - 1.0), (a - 1.0) - inv});
    out.matched = m > 0.0 ? AbCase::ii : AbCase::none;
  } else {
    m = strict_min({a + 1.0, -a, inv - (b - 1.0)});
    out.matched = m > 0.0 ? AbCase::iii : AbCase::none;
  }
  ConditionResult& r = out.result;
  r.name = "range_closed_form";
  r.margin = m;
  const char* which = b > a ? "i" : (b < a ? "ii" : "iii");
  if (out.matched != AbCase::none) {
    r.verdict = Verdict::pass;
    r.note = std::string("case (") + which + ")";
  } else {
    r.verdict = Verdict::fail;
    r.witness = Witness{};
    r.witness->value = m;
    r.note = std::string("case (") + which + ") inequalities not met";
  }
  return out;
}

ConditionResult check_range_komatu(double c, double p, const MuNuPair& munu, double) {
  return range_from_slacks("range_closed_form",
                           {{-c, true, "c < 0"}, {p - 2.0, true, "p > 2"}, {munu.mu - 1.0, false, "mu >= 1"}});
}

ConditionResult check_range(const Kernel& k, const MuNuPair& munu, double xi) {
  const bool gamma0 = munu.mu == 0.0;
  switch (k.family()) {
    case KernelFamily::bernardi: {
      const double c = std::get<BernardiParams>(k.params()).c;
      return gamma0 ? check_range_bernardi_gamma0(c, munu.nu, xi) : check_range_bernardi(c, munu, xi);
    }
    case KernelFamily::hypergeom: {
      if (gamma0) return not_applicable("range_closed_form", "no gamma = 0 range for this family");
      const auto& h = std::get<HypergeomParams>(k.params());
      return check_range_hypergeom(h.A, h.B, h.C, munu, xi);
    }
    case KernelFamily::ab_power: {
      if (gamma0) return not_applicable("range_closed_form", "no gamma = 0 range for this family");
      const auto& p = std::get<AbPowerParams>(k.params());
      return check_range_ab(p.a, p.b, munu).result;
    }
    case KernelFamily::komatu: {
      if (gamma0) return not_applicable("range_closed_form", "no gamma = 0 range for this family");
      const auto& p = std::get<KomatuParams>(k.params());
      return check_range_komatu(p.c, p.p, munu, xi);
    }
    case KernelFamily::tabulated:
      return not_applicable("range_closed_form", "no closed-form range for tabulated kernels");
  }
  return not_applicable("range_closed_form", "unknown family");
}

Gamma0Companion gamma0_companion(double c, double alpha, double xi, const std::vector<double>& t_grid) {
  validate_t_grid(t_grid);
  if (!(alpha > 0.0)) throw DomainError("gamma = 0 companion needs alpha > 0");
  Gamma0Companion out;

  // J(t) for lambda = (c+1) t^c
  const double e = c + 1.0 - 1.0 / alpha;
  double worst = -HUGE_VAL, worst_t = 0.0, worst_ratio = -HUGE_VAL;
  for (double t : t_grid) {
    const double lam_part = e == 0.0 ? -std::log(t) : (1.0 - std::pow(t, e)) / e;
    const double a1 = (1.0 - xi / alpha) * (c + 1.0) * lam_part;
    const double a2 = 0.5 * (c + 1.0) * (xi + 1.0 - c * xi) * std::pow(t, e);
    const double a3 = 0.5 * (c + 1.0) * (xi - 1.0 + c * xi) * std::pow(t, c - 1.0 - 1.0 / alpha);
    const double j = a1 + a2 + a3;
    const double ratio = j / (1.0 + std::abs(a1) + std::abs(a2) + std::abs(a3));
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst = j;
      worst_t = t;
    }
  }
  ConditionResult& jr = out.j_grid;
  jr.name = "gamma0_j_grid";
  jr.margin = -worst;
  jr.verdict = worst_ratio > kIneqTol ? Verdict::fail : Verdict::pass;
  if (jr.verdict == Verdict::fail) {
    jr.witness = Witness{};
    jr.witness->t = worst_t;
    jr.witness->value = worst;
  }
  jr.note = "J(t) <= 0 on the grid; J(1-) = xi (c+1)";

  const double poly = (1.0 - c - 1.0 / alpha) - xi * (1.0 - c * c - 1.0 / alpha + c / alpha);
  ConditionResult& pr = out.reduced;
  pr.name = "gamma0_reduced";
  pr.margin = -poly;
  pr.verdict = poly <= kRangeTol ? Verdict::pass : Verdict::fail;
  if (pr.verdict == Verdict::fail) {
    pr.witness = Witness{};
    pr.witness->value = poly;
  }
  pr.note = "(1 - c - 1/alpha) - xi (1 - c^2 - 1/alpha + c/alpha) <= 0";
  return out;
}

ConditionResult check_ineq_additional(const Kernel& k, const MuNuPair& munu, double xi) {
  if (!(munu.mu > 0.0) || !(munu.nu > 0.0)) return not_applicable("additional_cond", "needs mu > 0");
  const KernelAtOne one = k.at_one();
  if (one.value == 0.0) {
    if (one.d1 == 0.0) return not_applicable("additional_cond", "vacuous: lambda(1) = lambda'(1) = 0");
    // Multiplied through by lambda(1) the inequality reads -xi lambda'(1) >= 0.
    const double undivided = -xi * one.d1;
    return not_applicable("additional_cond", "lambda(1) = 0 with lambda'(1) != 0 is not covered; undivided form " +
                                                 std::string(undivided >= 0.0 ? "holds" : "fails") +
                                                 " (-xi lambda'(1) = " + num(undivided) + ")");
  }
  const double rhs = 1.0 + xi * (1.0 + 1.0 / munu.mu - 1.0 / munu.nu);
  const double lhs = xi * one.d1 / one.value;
  ConditionResult r;
  r.name = "additional_cond";
  r.margin = rhs - lhs;
  if (lhs <= rhs + kIneqTol * (1.0 + std::abs(rhs))) {
    r.verdict = Verdict::pass;
  } else {
    r.verdict = Verdict::fail;
    r.witness = Witness{};
    r.witness->t = 1.0;
    r.witness->value = rhs - lhs;
  }
  return r;
}

double final_cond_value(const Kernel& k, const MuNuPair& munu, double xi, double t) {
  require_positive_mu_nu(munu);
  const KernelJet j = k.jet(t);
  const double im = 1.0 / munu.mu;
  return (1.0 - xi) * ((1.0 + im) * j.value - t * j.d1) + xi * (t * t * j.d2 - im * t * j.d1);
}

double initial_cond_value(const Kernel& k, const MuNuPair& munu, double xi, double t,
                          const QuadratureSpec& quad) {
  require_positive_mu_nu(munu);
  const double in = 1.0 / munu.nu, im = 1.0 / munu.mu;
  const KernelJet j = k.jet(t);
  const double lam = capital_lambda(k, munu.nu, t, quad);
  return (xi * in - 1.0) * (in - im - 2.0) * lam + (1.0 + xi * (1.0 + im - in)) * std::pow(t, 1.0 - in) * j.value -
         xi * std::pow(t, 2.0 - in) * j.d1;
}

namespace {

// Grid minimum of a pointwise inequality value >= 0. `eval` returns
// (value, scale) so the roundoff allowance follows the magnitude of the terms.
template <class F>
ConditionResult grid_check(const char* name, const std::vector<double>& grid, F eval) {
  validate_t_grid(grid);
  ConditionResult r;
  r.name = name;
  double worst_ratio = HUGE_VAL, worst_value = 0.0, worst_t = 0.0;
  double min_value = HUGE_VAL;
  for (double t : grid) {
    const auto [v, scale] = eval(t);
    min_value = std::min(min_value, v);
    const double ratio = v / (1.0 + scale);
    if (ratio < worst_ratio) {
      worst_ratio = ratio;
      worst_value = v;
      worst_t = t;
    }
  }
  r.margin = min_value;
  if (worst_ratio < -kIneqTol) {
    r.verdict = Verdict::fail;
    r.witness = Witness{};
    r.witness->t = worst_t;
    r.witness->value = worst_value;
  } else {
    r.verdict = Verdict::pass;
  }
  return r;
}

}  // namespace

ConditionResult check_ineq_final(const Kernel& k, const MuNuPair& munu, double xi,
                                 const std::vector<double>& t_grid) {
  if (!(munu.mu > 0.0) || !(munu.nu > 0.0)) return not_applicable("final_cond", "needs mu > 0");
  ConditionResult r = grid_check("final_cond", t_grid, [&](double t) {
    const KernelJet j = k.jet(t);
    const double im = 1.0 / munu.mu;
    const double v = (1.0 - xi) * ((1.0 + im) * j.value - t * j.d1) + xi * (t * t * j.d2 - im * t * j.d1);
    const double scale = (1.0 + im) * (std::abs(j.value) + std::abs(t * j.d1)) + std::abs(t * t * j.d2);
    return std::pair{v, scale};
  });
  if (k.family() == KernelFamily::tabulated) r.note = "finite-difference derivatives";
  return r;
}

ConditionResult check_ineq_initial(const Kernel& k, const MuNuPair& munu, double xi,
                                   const std::vector<double>& t_grid, const QuadratureSpec& quad) {
  if (!(munu.mu > 0.0) || !(munu.nu > 0.0)) return not_applicable("initial_cond", "needs mu > 0");
  const double in = 1.0 / munu.nu, im = 1.0 / munu.mu;
  return grid_check("initial_cond", t_grid, [&](double t) {
    const KernelJet j = k.jet(t);
    const double lam = capital_lambda(k, munu.nu, t, quad);
    const double a1 = (xi * in - 1.0) * (in - im - 2.0) * lam;
    const double a2 = (1.0 + xi * (1.0 + im - in)) * std::pow(t, 1.0 - in) * j.value;
    const double a3 = -xi * std::pow(t, 2.0 - in) * j.d1;
    return std::pair{a1 + a2 + a3, std::abs(a1) + std::abs(a2) + std::abs(a3)};
  });
}

double monotone_function(const Kernel& k, const MuNuPair& munu, double xi, double t,
                         const QuadratureSpec& quad) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("monotone function needs t in (0, 1)");
  if (munu.mu == 0.0) {
    const double alpha = munu.nu;
    if (!(alpha > 0.0)) throw DomainError("monotone function needs alpha > 0");
    const double lam = capital_lambda(k, alpha, t, quad);
    return ((1.0 - xi / alpha) * lam + xi * std::pow(t, 1.0 - 1.0 / alpha) * k.density(t)) / (1.0 - t * t);
  }
  require_positive_mu_nu(munu);
  const double pi = capital_pi(k, munu, t, quad);
  const double lam = capital_lambda(k, munu.nu, t, quad);
  const double d = 1.0 / munu.nu - 1.0 / munu.mu;
  return ((1.0 - xi / munu.mu) * pi + xi * std::pow(t, d) * lam) / (1.0 - t * t);
}

ConditionResult check_monotone_decreasing(const Kernel& k, const MuNuPair& munu, double xi,
                                          const std::vector<double>& t_grid, const QuadratureSpec& quad) {
  validate_t_grid(t_grid);
  std::vector<double> g(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) g[i] = monotone_function(k, munu, xi, t_grid[i], quad);

  ConditionResult r;
  r.name = "monotone_decreasing";
  double worst = -HUGE_VAL, worst_ratio = -HUGE_VAL;
  std::size_t at = 0;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    const double rise = g[i + 1] - g[i];
    const double ratio = rise / (1.0 + std::abs(g[i]) + std::abs(g[i + 1]));
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst = rise;
      at = i;
    }
  }
  r.margin = -worst;
  if (worst_ratio > kIneqTol) {
    r.verdict = Verdict::fail;
    r.witness = Witness{};
    r.witness->t = t_grid[at];
    r.witness->t_next = t_grid[at + 1];
    r.witness->value = worst;
  } else {
    r.verdict = Verdict::pass;
  }
  if (munu.mu == 0.0) r.note = "gamma = 0 form with Lambda_alpha";
  return r;
}

std::complex<double> h_over_w(std::complex<double> w, std::complex<double> eps) {
  const std::complex<double> d = 1.0 - w;
  return (1.0 + 0.5 * (eps - 1.0) * w) / (d * d);
}

std::complex<double> h_prime(std::complex<double> w, std::complex<double> eps) {
  const std::complex<double> d = 1.0 - w;
  return (1.0 + eps * w) / (d * d * d);
}

namespace {

// Left exponent of t^{1/mu - 1} Pi(t) at 0, ignoring log factors.
double n_pi_left_exponent(const Kernel& k, const MuNuPair& munu) {
  const double p0 = k.signature().pow0;
  const double d = 1.0 / munu.nu - 1.0 / munu.mu;
  const double e_pi = std::min({0.0, p0 + 1.0 - 1.0 / munu.mu, d});
  // log factors make the behaviour slightly worse than the bare power
  const double logs = k.signature().log0_power > 0.0 || e_pi == 0.0 ? 0.05 : 0.0;
  return std::max(1.0 / munu.mu - 1.0 + e_pi - logs, -0.999);
}

struct LParts {
  double a;                  // eps-independent real part
  std::complex<double> b;    // coefficient of eps
};

LParts l_parts(double t, std::complex<double> z, double xi) {
  const std::complex<double> w = t * z;
  const std::complex<double> d = 1.0 - w;
  const std::complex<double> d2 = d * d;
  const std::complex<double> d3 = d2 * d;
  const std::complex<double> a1 = (1.0 - 0.5 * w) / d2;
  const std::complex<double> b1 = 0.5 * w / d2;
  const std::complex<double> a2 = 1.0 / d3;
  const std::complex<double> b2 = w / d3;
  const double s = 1.0 + t;
  const double a = (1.0 - xi) * (a1.real() - 1.0 / (s * s)) + xi * (a2.real() - (1.0 - t) / (s * s * s));
  return {a, (1.0 - xi) * b1 + xi * b2};
}

}  // namespace

double n_pi_value(const Kernel& k, const MuNuPair& munu, double xi, std::complex<double> z,
                  std::complex<double> eps, const QuadratureSpec& quad) {
  require_positive_mu_nu(munu);
  if (!(std::abs(z) < 1.0)) throw DomainError("N_Pi needs |z| < 1");
  const double e = n_pi_left_exponent(k, munu);
  QuadratureSpec inner = quad;
  inner.rel_tol *= 0.01;
  inner.abs_tol *= 0.01;
  auto f = [&](double t) {
    const LParts p = l_parts(t, z, xi);
    const double l = p.a + (eps * p.b).real();
    return std::pow(t, 1.0 / munu.mu - 1.0) * capital_pi(k, munu, t, inner) * l;
  };
  return integrate(f, {e, k.signature().pow1 + 2.0, 0.0}, quad).value;
}

NPiResult eval_n_pi(const Kernel& k, const MuNuPair& munu, double xi, const NPiOptions& opts,
                    const QuadratureSpec& quad) {
  if (!(munu.mu > 0.0) || !(munu.nu > 0.0)) throw DomainError("N_Pi needs mu > 0 (gamma > 0 branch)");
  opts.z_grid.validate();
  if (opts.eps_points < 1) throw DomainError("eps grid must be non-empty");

  const FixedRule rule = graded_unit_rule(n_pi_left_exponent(k, munu), opts.points_per_panel);
  std::vector<double> w(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double t = rule.nodes[i];
    w[i] = rule.weights[i] * std::pow(t, 1.0 / munu.mu - 1.0) * capital_pi(k, munu, t, quad);
  }
  const auto eps_grid = circle_grid(opts.eps_points);

  // index of the nodes closest to 0 and 1
  std::size_t i_lo = 0, i_hi = 0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    if (rule.nodes[i] < rule.nodes[i_lo]) i_lo = i;
    if (rule.nodes[i] > rule.nodes[i_hi]) i_hi = i;
  }
  const double t_lo = rule.nodes[i_lo], t_hi = rule.nodes[i_hi];
  const double f_lo = std::pow(t_lo, 1.0 / munu.mu - 1.0) * capital_pi(k, munu, t_lo, quad);
  const double f_hi = std::pow(t_hi, 1.0 / munu.mu - 1.0) * capital_pi(k, munu, t_hi, quad);

  NPiResult out;
  out.min_value = HUGE_VAL;
  out.exact_eps_min = HUGE_VAL;
  for (double r : opts.z_grid.radii) {
    for (double th : opts.z_grid.angles) {
      const std::complex<double> z = std::polar(r, th);
      double a = 0.0;
      std::complex<double> b = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i) {
        const LParts p = l_parts(rule.nodes[i], z, xi);
        a += w[i] * p.a;
        b += w[i] * p.b;
      }
      for (const auto& eps : eps_grid) {
        const double v = a + (eps * b).real();
        if (v < out.min_value) {
          out.min_value = v;
          out.argmin_z = z;
          out.argmin_eps = eps;
        }
      }
      out.evaluations += eps_grid.size();
      const double exact = a - std::abs(b);
      if (exact < out.exact_eps_min) {
        out.exact_eps_min = exact;
        out.exact_argmin_z = z;
        out.exact_argmin_eps = std::abs(b) > 0.0 ? -std::conj(b) / std::abs(b) : std::complex<double>(1.0);
      }
      const LParts lo = l_parts(t_lo, z, xi);
      const LParts hi = l_parts(t_hi, z, xi);
      const double tail = std::abs(f_lo) * (std::abs(lo.a) + std::abs(lo.b)) * rule.left_cut +
                          std::abs(f_hi) * (std::abs(hi.a) + std::abs(hi.b)) * (1.0 - rule.right_cut);
      out.neglected_tail = std::max(out.neglected_tail, tail);
    }
  }
  return out;
}

AdmissibilityReport assess(const Kernel& k, const MuNuPair& munu, double xi, const AssessOptions& opts) {
  if (!(xi >= 0.0 && xi <= 1.0)) throw DomainError("xi must lie in [0, 1]");
  AdmissibilityReport rep;
  rep.munu = munu;
  rep.xi = xi;
  rep.kernel = family_name(k.family());

  rep.conditions.push_back(check_range(k, munu, xi));
  const bool gamma0 = munu.mu == 0.0;
  if (gamma0) {
    rep.conditions.push_back(not_applicable("additional_cond", "gamma = 0: needs mu > 0"));
    rep.conditions.push_back(not_applicable("final_cond", "gamma = 0: needs mu > 0"));
    rep.conditions.push_back(not_applicable("initial_cond", "gamma = 0: needs mu > 0"));
    if (munu.nu > 0.0) {
      rep.conditions.push_back(check_monotone_decreasing(k, munu, xi, opts.t_grid, opts.quad));
    } else {
      rep.conditions.push_back(not_applicable("monotone_decreasing", "mu = nu = 0 is degenerate"));
    }
    rep.conditions.push_back(not_applicable("n_pi_nonneg", "gamma = 0: functional needs mu > 0"));
    if (k.family() == KernelFamily::bernardi && munu.nu > 0.0) {
      const double c = std::get<BernardiParams>(k.params()).c;
      const Gamma0Companion comp = gamma0_companion(c, munu.nu, xi, opts.t_grid);
      for (const auto* cr : {&comp.j_grid, &comp.reduced}) {
        std::string line = cr->name + ": " + verdict_name(cr->verdict) + " (margin " + num(cr->margin) + ")";
        if (cr->witness && cr->witness->t) line += " at t=" + num(*cr->witness->t);
        rep.notes.push_back(line);
      }
    }
    return rep;
  }

  rep.conditions.push_back(check_ineq_additional(k, munu, xi));
  rep.conditions.push_back(check_ineq_final(k, munu, xi, opts.t_grid));
  rep.conditions.push_back(check_ineq_initial(k, munu, xi, opts.t_grid, opts.quad));
  rep.conditions.push_back(check_monotone_decreasing(k, munu, xi, opts.t_grid, opts.quad));

  if (opts.run_n_pi) {
    const NPiResult np = eval_n_pi(k, munu, xi, opts.n_pi, opts.quad);
    ConditionResult r;
    r.name = "n_pi_nonneg";
    r.margin = np.min_value;
    r.verdict = np.min_value >= -opts.n_pi_tol ? Verdict::pass : Verdict::fail;
    r.witness = Witness{};
    r.witness->z = np.argmin_z;
    r.witness->eps = np.argmin_eps;
    r.witness->value = np.min_value;
    if (r.verdict == Verdict::pass && np.min_value >= 0.0) r.witness.reset();
    r.note = "grid certificate; exact-eps min " + num(np.exact_eps_min) + ", neglected tail " +
             num(np.neglected_tail);
    rep.conditions.push_back(r);
  } else {
    rep.conditions.push_back(not_applicable("n_pi_nonneg", "skipped"));
  }

  const auto& add = rep.get("additional_cond");
  const auto& fin = rep.get("final_cond");
  const auto& ini = rep.get("initial_cond");
  const bool add_ok = add.verdict == Verdict::pass || add.note.rfind("vacuous", 0) == 0;
  if (fin.verdict == Verdict::pass && add_ok && ini.verdict == Verdict::fail) {
    rep.notes.push_back("final and additional pass but initial fails: implication broken");
  }
  if (ini.verdict == Verdict::pass && rep.get("monotone_decreasing").verdict == Verdict::fail) {
    rep.notes.push_back("initial passes but monotone check fails: implication broken");
  }
  return rep;
}

}  // namespace pascu
