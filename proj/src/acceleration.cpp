#include "pascu/acceleration.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pascu/errors.hpp"

namespace pascu {

double accelerated_alternating_sum(std::span<const double> b) {
  const int n = static_cast<int>(b.size());
  if (n == 0) return 0.0;
  double d = std::pow(3.0 + std::sqrt(8.0), n);
  d = 0.5 * (d + 1.0 / d);
  double bb = -1.0;
  double c = -d;
  double s = 0.0;
  for (int k = 0; k < n; ++k) {
    c = bb - c;
    s += c * b[k];
    bb = (static_cast<double>(k + n) * (k - n) * bb) / ((k + 0.5) * (k + 1.0));
  }
  return s / d;
}

namespace {

// Largest weight count used by the accelerated path. Beyond ~160 the
// normalizing power overflows nothing but gains no accuracy either.
constexpr int kMaxAccelerated = 160;

}  // namespace

SeriesEstimate sum_alternating(const std::function<double(int)>& term,
                               const TruncationPolicy& policy) {
  policy.validate();

  // Direct partial sums: stop at the first term below tolerance that is
  // also below its predecessor (terms are eventually monotone here). The sum
  // then lies between S_n and S_{n+1}; return the midpoint.
  std::vector<double> b;
  b.reserve(static_cast<std::size_t>(policy.order) + 1);
  double partial = 0.0;
  double sign = 1.0;
  for (int n = 0; n <= policy.order; ++n) {
    const double tn = term(n);
    b.push_back(tn);
    if (n > 0 && tn <= policy.tail_tol && tn <= b[n - 1]) {
      return {partial + 0.5 * sign * tn, 0.5 * tn, n, false};
    }
    partial += sign * tn;
    sign = -sign;
  }

  const int cap = std::min(kMaxAccelerated, static_cast<int>(b.size()));
  double prev = accelerated_alternating_sum(std::span<const double>(b.data(), std::min(8, cap)));
  double diff = HUGE_VAL;
  for (int n = 12; n <= cap; n += 4) {
    const double cur = accelerated_alternating_sum(std::span<const double>(b.data(), n));
    diff = std::abs(cur - prev);
    if (diff <= policy.tail_tol * std::max(1.0, std::abs(cur))) {
      return {cur, diff, n, true};
    }
    prev = cur;
  }
  throw TruncationError("alternating series did not reach the requested tail bound", diff);
}

}  // namespace pascu
