#include "pascu/power_series.hpp"

#include <algorithm>
#include <cmath>

#include "pascu/errors.hpp"

namespace pascu {

void TruncationPolicy::validate() const {
  if (order < 1) throw DomainError("truncation order must be >= 1");
  if (!(tail_tol > 0.0)) throw DomainError("tail tolerance must be > 0");
}

PowerSeries::PowerSeries(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

PowerSeries PowerSeries::identity(int order) {
  std::vector<Complex> c(static_cast<std::size_t>(std::max(order, 1)) + 1, 0.0);
  c[1] = 1.0;
  return PowerSeries(std::move(c));
}

PowerSeries PowerSeries::geometric(int order) {
  return PowerSeries(std::vector<Complex>(static_cast<std::size_t>(std::max(order, 0)) + 1, 1.0));
}

Complex PowerSeries::evaluate(Complex z) const {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

PowerSeries PowerSeries::derivative() const {
  if (coeffs_.size() <= 1) return PowerSeries({0.0});
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t n = 1; n < coeffs_.size(); ++n) d[n - 1] = static_cast<double>(n) * coeffs_[n];
  return PowerSeries(std::move(d));
}

double PowerSeries::tail_estimate(double r) const {
  if (r <= 0.0) return 0.0;
  if (r >= 1.0) return HUGE_VAL;
  // Largest magnitude among the last few coefficients bounds the rest.
  const int n = order();
  const int window = std::min(n + 1, 8);
  double amax = 0.0;
  for (int k = n - window + 1; k <= n; ++k) amax = std::max(amax, std::abs(coeffs_[k]));
  return amax * std::pow(r, n + 1) / (1.0 - r);
}

bool PowerSeries::normalized(double tol) const {
  return std::abs((*this)[0]) <= tol && std::abs((*this)[1] - 1.0) <= tol;
}

PowerSeries hadamard(const PowerSeries& f, const PowerSeries& g) {
  const int n = std::min(f.order(), g.order());
  std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) c[k] = f[k] * g[k];
  return PowerSeries(std::move(c));
}

}  // namespace pascu
