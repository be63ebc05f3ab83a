#include "pascu/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pascu/errors.hpp"

namespace pascu {

const char* family_name(KernelFamily f) {
  switch (f) {
    case KernelFamily::bernardi: return "bernardi";
    case KernelFamily::hypergeom: return "hypergeom";
    case KernelFamily::ab_power: return "ab_power";
    case KernelFamily::komatu: return "komatu";
    case KernelFamily::tabulated: return "tabulated";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// psi(u) = -log(1-u)/u and its first two derivatives; t = 1 - u is passed
// separately so that t near 0 keeps its precision.
ProfileJet log_ratio_jet(double u, double t) {
  if (u < 0.5) {
    // psi = sum u^j/(j+1), psi' = sum (j+1) u^j/(j+2), psi'' = sum (j+1)(j+2) u^j/(j+3)
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, uj = 1.0;
    for (int j = 0; j < 400; ++j) {
      s0 += uj / (j + 1.0);
      s1 += uj * (j + 1.0) / (j + 2.0);
      s2 += uj * (j + 1.0) * (j + 2.0) / (j + 3.0);
      uj *= u;
      if (uj * (j + 3.0) * (j + 4.0) < 1e-18) break;
    }
    return {s0, s1, s2};
  }
  const double l = std::log(t);
  const double v = t;
  const double psi = -l / u;
  const double d1 = 1.0 / (u * v) + l / (u * u);
  const double d2 = -(1.0 - 2.0 * u) / (u * u * v * v) - 1.0 / (v * u * u) - 2.0 * l / (u * u * u);
  return {psi, d1, d2};
}

ProfileJet profile_jet(const HypergeomParams& h, double u, double t) {
  switch (h.profile) {
    case ProfileKind::constant: return {1.0, 0.0, 0.0};
    case ProfileKind::komatu: {
      const ProfileJet s = log_ratio_jet(u, t);
      const double m = h.p - 1.0;
      const double r = s.d1 / s.value;
      const double v = std::pow(s.value, m);
      return {v, v * m * r, v * (m * (m - 1.0) * r * r + m * s.d2 / s.value)};
    }
    case ProfileKind::custom: return h.custom(u);
  }
  return {};
}

// log(1/t)
double log_inv(double t) { return -std::log(t); }

}  // namespace

double Kernel::raw_density(double t) const {
  return std::visit(
      [t](const auto& p) -> double {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, BernardiParams>) {
          return std::pow(t, p.c);
        } else if constexpr (std::is_same_v<P, KomatuParams>) {
          return std::pow(t, p.c) * std::pow(log_inv(t), p.p - 1.0);
        } else if constexpr (std::is_same_v<P, AbPowerParams>) {
          if (p.a == p.b) return std::pow(t, p.a) * log_inv(t);
          const double d = p.b - p.a;
          // (1 - t^d)/d without cancellation near t = 1
          return -std::pow(t, p.a) * std::expm1(d * std::log(t)) / d;
        } else if constexpr (std::is_same_v<P, HypergeomParams>) {
          const double e = p.C - p.A - p.B;
          return std::pow(t, p.B - 1.0) * std::pow(1.0 - t, e) * profile_jet(p, 1.0 - t, t).value;
        } else {
          const auto it = std::upper_bound(p.t.begin(), p.t.end(), t);
          const std::size_t i = std::clamp<std::size_t>(it - p.t.begin(), 1, p.t.size() - 1);
          const double w = (t - p.t[i - 1]) / (p.t[i] - p.t[i - 1]);
          return (1.0 - w) * p.lambda[i - 1] + w * p.lambda[i];
        }
      },
      params_);
}

double Kernel::density(double t) const {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("kernel density needs t in (0, 1)");
  return norm_const_ * raw_density(t);
}

KernelJet Kernel::jet(double t) const {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("kernel derivatives need t in (0, 1)");
  const double k = norm_const_;
  return std::visit(
      [&](const auto& p) -> KernelJet {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, BernardiParams>) {
          const double c = p.c;
          const double tc = std::pow(t, c);
          return {k * tc, k * c * tc / t, k * c * (c - 1.0) * tc / (t * t)};
        } else if constexpr (std::is_same_v<P, KomatuParams>) {
          const double c = p.c, m = p.p - 1.0, L = log_inv(t);
          const double tc = std::pow(t, c);
          const double Lm1 = std::pow(L, m - 1.0);
          const double v = k * tc * Lm1 * L;
          const double d1 = k * tc / t * Lm1 * (c * L - m);
          const double Lm2 = std::pow(L, m - 2.0);
          const double d2 = k * tc / (t * t) *
                            ((c - 1.0) * Lm1 * (c * L - m) - (m - 1.0) * Lm2 * (c * L - m) - c * Lm1);
          return {v, d1, d2};
        } else if constexpr (std::is_same_v<P, AbPowerParams>) {
          const double a = p.a, b = p.b;
          const double ta = std::pow(t, a);
          if (a == b) {
            const double L = log_inv(t);
            return {k * ta * L, k * ta / t * (a * L - 1.0),
                    k * ta / (t * t) * ((a - 1.0) * (a * L - 1.0) - a)};
          }
          const double d = b - a;
          const double r = std::expm1(d * std::log(t)) / d;  // (t^d - 1)/d
          return {-k * ta * r, k * ta / t * (-1.0 - b * r),
                  k * ta / (t * t) * (-(a + b - 1.0) - b * (b - 1.0) * r)};
        } else if constexpr (std::is_same_v<P, HypergeomParams>) {
          const double e = p.C - p.A - p.B;
          const double u = 1.0 - t;
          const ProfileJet ph = profile_jet(p, u, t);
          const double v = k * std::pow(t, p.B - 1.0) * std::pow(u, e) * ph.value;
          // log-derivative form; profile derivatives taken w.r.t. u = 1 - t
          const double r1 = ph.d1 / ph.value;
          const double r2 = ph.d2 / ph.value;
          const double L1 = (p.B - 1.0) / t - e / u - r1;
          const double L2 = -(p.B - 1.0) / (t * t) - e / (u * u) + r2 - r1 * r1;
          return {v, v * L1, v * (L2 + L1 * L1)};
        } else {
          // piecewise linear: slopes of the segment, second difference of neighbours
          const auto it = std::upper_bound(p.t.begin(), p.t.end(), t);
          const std::size_t n = p.t.size();
          const std::size_t i = std::clamp<std::size_t>(it - p.t.begin(), 1, n - 1);
          const double w = (t - p.t[i - 1]) / (p.t[i] - p.t[i - 1]);
          const double v = (1.0 - w) * p.lambda[i - 1] + w * p.lambda[i];
          const double slope = (p.lambda[i] - p.lambda[i - 1]) / (p.t[i] - p.t[i - 1]);
          double d2 = 0.0;
          if (n >= 3) {
            const std::size_t j = std::clamp<std::size_t>(i, 1, n - 2);
            const double s0 = (p.lambda[j] - p.lambda[j - 1]) / (p.t[j] - p.t[j - 1]);
            const double s1 = (p.lambda[j + 1] - p.lambda[j]) / (p.t[j + 1] - p.t[j]);
            d2 = 2.0 * (s1 - s0) / (p.t[j + 1] - p.t[j - 1]);
          }
          return {k * v, k * slope, k * d2};
        }
      },
      params_);
}

KernelAtOne Kernel::at_one() const {
  const double k = norm_const_;
  return std::visit(
      [&](const auto& p) -> KernelAtOne {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, BernardiParams>) {
          return {k, k * p.c};
        } else if constexpr (std::is_same_v<P, KomatuParams>) {
          const double m = p.p - 1.0;
          if (m > 1.0) return {0.0, 0.0};
          if (m == 1.0) return {0.0, -k};
          return {0.0, -kInf};
        } else if constexpr (std::is_same_v<P, AbPowerParams>) {
          return {0.0, -k};
        } else if constexpr (std::is_same_v<P, HypergeomParams>) {
          const double e = p.C - p.A - p.B;
          const double phi0 = profile_jet(p, 0.0, 1.0).value;
          if (e > 1.0) return {0.0, 0.0};
          if (e == 1.0) return {0.0, -k * phi0};
          return {0.0, -kInf};
        } else {
          const std::size_t n = p.t.size();
          return {k * p.lambda[n - 1],
                  k * (p.lambda[n - 1] - p.lambda[n - 2]) / (p.t[n - 1] - p.t[n - 2])};
        }
      },
      params_);
}

namespace {

void validate_family(const KernelParams& params) {
  std::visit(
      [](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, BernardiParams>) {
          if (!(p.c > -1.0)) throw DomainError("bernardi kernel needs c > -1 (t^c integrable at 0)");
        } else if constexpr (std::is_same_v<P, KomatuParams>) {
          if (!(p.c > -1.0)) throw DomainError("komatu kernel needs c > -1 (t^c integrable at 0)");
          if (!(p.p > 1.0)) throw DomainError("komatu kernel needs p > 1");
        } else if constexpr (std::is_same_v<P, AbPowerParams>) {
          if (!(p.a > -1.0) || !(p.b > -1.0)) {
            throw DomainError("ab_power kernel needs a > -1 and b > -1 (t^min(a,b) integrable at 0)");
          }
        } else if constexpr (std::is_same_v<P, HypergeomParams>) {
          if (!(p.B > 0.0)) throw DomainError("hypergeom kernel needs B > 0 (t^{B-1} integrable at 0)");
          if (!(p.C - p.A - p.B > 0.0)) {
            throw DomainError("hypergeom kernel needs C - A - B > 0 ((1-t)^{C-A-B} at 1)");
          }
          if (p.profile == ProfileKind::komatu && !(p.p > 1.0)) {
            throw DomainError("komatu profile needs p > 1");
          }
          if (p.profile == ProfileKind::custom && !p.custom) {
            throw DomainError("custom profile needs a callable");
          }
        } else {
          if (p.t.size() != p.lambda.size()) throw DomainError("tabulated kernel: t and lambda sizes differ");
          if (p.t.size() < 2) throw DomainError("tabulated kernel needs at least two samples");
          if (p.t.front() != 0.0 || p.t.back() != 1.0) {
            throw DomainError("tabulated kernel grid must start at 0 and end at 1");
          }
          for (std::size_t i = 1; i < p.t.size(); ++i) {
            if (!(p.t[i] > p.t[i - 1])) throw DomainError("tabulated kernel grid must be increasing");
          }
          for (double v : p.lambda) {
            if (!(v >= 0.0) || !std::isfinite(v)) {
              throw DomainError("tabulated kernel values must be finite and nonnegative");
            }
          }
        }
      },
      params);
}

double tabulated_moment(const TabulatedParams& p, int n) {
  // exact moment of the linear interpolant, segment by segment
  double s = 0.0;
  for (std::size_t i = 1; i < p.t.size(); ++i) {
    const double t0 = p.t[i - 1], t1 = p.t[i];
    const double slope = (p.lambda[i] - p.lambda[i - 1]) / (t1 - t0);
    const double icpt = p.lambda[i - 1] - slope * t0;
    s += icpt * (std::pow(t1, n + 1) - std::pow(t0, n + 1)) / (n + 1.0) +
         slope * (std::pow(t1, n + 2) - std::pow(t0, n + 2)) / (n + 2.0);
  }
  return s;
}

}  // namespace

Kernel kernel_normalize(KernelParams params, const QuadratureSpec& quad) {
  validate_family(params);
  Kernel k;
  k.params_ = std::move(params);
  k.family_ = static_cast<KernelFamily>(k.params_.index());

  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, BernardiParams>) {
          k.norm_const_ = p.c + 1.0;
          k.signature_ = {p.c, 0.0, 0.0};
        } else if constexpr (std::is_same_v<P, KomatuParams>) {
          k.norm_const_ = std::exp(p.p * std::log1p(p.c) - std::lgamma(p.p));
          k.signature_ = {p.c, p.p - 1.0, p.p - 1.0};
        } else if constexpr (std::is_same_v<P, AbPowerParams>) {
          k.norm_const_ = (p.a + 1.0) * (p.b + 1.0);
          k.signature_ = {std::min(p.a, p.b), 1.0, p.a == p.b ? 1.0 : 0.0};
        } else if constexpr (std::is_same_v<P, HypergeomParams>) {
          const double e = p.C - p.A - p.B;
          k.signature_ = {p.B - 1.0, e, p.profile == ProfileKind::komatu ? p.p - 1.0 : 0.0};
          if (p.profile == ProfileKind::custom) {
            // phi > 0 with nonnegative phi', phi'' on a spot grid
            for (int i = 1; i < 64; ++i) {
              const double u = i / 64.0;
              const ProfileJet j = p.custom(u);
              if (!(j.value > 0.0) || !(j.d1 >= 0.0) || !(j.d2 >= 0.0)) {
                throw DomainError("custom profile must satisfy phi > 0, phi' >= 0, phi'' >= 0 (fails at u=" +
                                  fmt(u) + ")");
              }
            }
          }
          k.norm_const_ = 1.0;
          const QuadResult r = integrate([&](double t) { return k.raw_density(t); }, k.signature_, quad);
          if (!(r.value > 0.0)) throw DomainError("hypergeom kernel has zero mass");
          k.norm_const_ = 1.0 / r.value;
        } else {
          k.signature_ = {0.0, 0.0, 0.0};
          const double mass = tabulated_moment(p, 0);
          if (!(mass > 0.0)) throw DomainError("tabulated kernel has zero mass");
          k.norm_const_ = 1.0 / mass;
          k.warnings_.push_back("tabulated kernel: derivatives by finite differences");
        }
      },
      k.params_);

  // Spot checks: nonnegativity on a 1024-point grid and unit mass.
  for (int i = 1; i <= 1024; ++i) {
    const double t = i / 1025.0;
    const double v = k.density(t);
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw DomainError("kernel density negative or non-finite at t=" + fmt(t));
    }
  }
  double mass = 0.0;
  if (k.family_ == KernelFamily::tabulated) {
    mass = k.norm_const_ * tabulated_moment(std::get<TabulatedParams>(k.params_), 0);
  } else {
    mass = integrate([&](double t) { return k.density(t); }, k.signature_, quad).value;
  }
  if (std::abs(mass - 1.0) > 1e-9) {
    throw QuadratureError("kernel does not integrate to 1 (got " + fmt(mass) + ")", mass, std::abs(mass - 1.0));
  }
  return k;
}

Kernel make_bernardi(double c) { return kernel_normalize(BernardiParams{c}); }
Kernel make_komatu(double c, double p) { return kernel_normalize(KomatuParams{c, p}); }
Kernel make_ab_power(double a, double b) { return kernel_normalize(AbPowerParams{a, b}); }
Kernel make_hypergeom(double A, double B, double C, ProfileKind profile, double p) {
  HypergeomParams h;
  h.A = A;
  h.B = B;
  h.C = C;
  h.profile = profile;
  h.p = p;
  return kernel_normalize(std::move(h));
}
Kernel make_tabulated(std::vector<double> t, std::vector<double> lambda) {
  return kernel_normalize(TabulatedParams{std::move(t), std::move(lambda)});
}

double kernel_density(const Kernel& k, double t) { return k.density(t); }

double moment_tau(const Kernel& k, int n, const QuadratureSpec& quad) {
  if (n < 0) throw DomainError("moment index must be >= 0");
  if (n == 0) return 1.0;
  return std::visit(
      [&](const auto& p) -> double {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, BernardiParams>) {
          return (1.0 + p.c) / (n + p.c + 1.0);
        } else if constexpr (std::is_same_v<P, KomatuParams>) {
          return std::pow((1.0 + p.c) / (n + p.c + 1.0), p.p);
        } else if constexpr (std::is_same_v<P, AbPowerParams>) {
          if (p.a == p.b) {
            const double r = (p.a + 1.0) / (n + p.a + 1.0);
            return r * r;
          }
          return (p.a + 1.0) * (p.b + 1.0) / ((n + p.a + 1.0) * (n + p.b + 1.0));
        } else if constexpr (std::is_same_v<P, HypergeomParams>) {
          EndpointSignature sig = k.signature();
          sig.pow0 += n;
          return integrate([&](double t) { return k.density(t) * std::pow(t, n); }, sig, quad).value;
        } else {
          return k.norm_const() * tabulated_moment(p, n);
        }
      },
      k.params());
}

std::vector<double> moments(const Kernel& k, int n_max, const QuadratureSpec& quad) {
  std::vector<double> out(static_cast<std::size_t>(std::max(n_max, 0)) + 1);
  for (int n = 0; n <= n_max; ++n) out[n] = moment_tau(k, n, quad);
  return out;
}

double capital_lambda(const Kernel& k, double nu, double t, const QuadratureSpec& quad) {
  if (!(nu > 0.0)) throw DomainError("Lambda_nu needs nu > 0");
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("Lambda_nu needs t in [0, 1]");
  if (t == 1.0) return 0.0;
  const double inv = 1.0 / nu;
  auto f = [&](double x) { return k.density(x) * std::pow(x, -inv); };
  const EndBehaviour at_one{k.signature().pow1, 0.0};
  if (t == 0.0) {
    const double e = k.signature().pow0 - inv;
    if (!(e > -1.0)) throw DomainError("Lambda_nu(0) diverges: kernel exponent minus 1/nu is <= -1");
    return integrate_interval(f, 0.0, 1.0, {e, k.signature().log0_power}, at_one, quad).value;
  }
  return integrate_tail(f, t, at_one, quad).value;
}

double capital_pi(const Kernel& k, const MuNuPair& munu, double t, const QuadratureSpec& quad) {
  if (munu.mu == 0.0) {
    if (!(munu.nu > 0.0)) throw DomainError("Pi needs mu > 0 or nu = alpha > 0");
    return capital_lambda(k, munu.nu, t, quad);
  }
  if (!(munu.mu > 0.0) || !(munu.nu > 0.0)) throw DomainError("Pi needs mu > 0 and nu > 0");
  if (!(t > 0.0 && t <= 1.0)) throw DomainError("Pi needs t in (0, 1]");
  if (t == 1.0) return 0.0;
  const double inv_nu = 1.0 / munu.nu;
  const double delta = inv_nu - 1.0 / munu.mu;
  const double td = std::pow(t, delta);
  // Pi(t) = int_t^1 lambda(y) y^{-1/nu} (y^delta - t^delta)/delta dy
  auto f = [&](double y) {
    const double l = std::log(y / t);
    const double w = delta == 0.0 ? l : td * std::expm1(delta * l) / delta;
    return k.density(y) * std::pow(y, -inv_nu) * w;
  };
  return integrate_tail(f, t, {k.signature().pow1 + 1.0, 0.0}, quad).value;
}

double capital_pi_nested(const Kernel& k, const MuNuPair& munu, double t, const QuadratureSpec& quad) {
  if (munu.mu == 0.0) return capital_pi(k, munu, t, quad);
  if (!(munu.mu > 0.0) || !(munu.nu > 0.0)) throw DomainError("Pi needs mu > 0 and nu > 0");
  if (!(t > 0.0 && t <= 1.0)) throw DomainError("Pi needs t in (0, 1]");
  if (t == 1.0) return 0.0;
  const double e = 1.0 / munu.nu - 1.0 - 1.0 / munu.mu;
  QuadratureSpec inner = quad;
  inner.rel_tol *= 0.01;
  inner.abs_tol *= 0.01;
  auto f = [&](double x) { return capital_lambda(k, munu.nu, x, inner) * std::pow(x, e); };
  return integrate_tail(f, t, {k.signature().pow1 + 1.0, 0.0}, quad).value;
}

}  // namespace pascu
