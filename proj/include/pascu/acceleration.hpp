#pragma once

#include <functional>
#include <span>

#include "pascu/power_series.hpp"

namespace pascu {

struct SeriesEstimate {
  double value = 0.0;
  /// Bound (or estimate) of the neglected tail.
  double tail_bound = 0.0;
  int terms = 0;
  bool accelerated = false;
};

/// Weighted alternating sum sum_{k<n} w_k (-1)^k b_k of Cohen, Rodriguez
/// Villegas and Zagier. For b_k the moments of a measure on [0, 1] the
/// error decays like (3 + sqrt 8)^{-n}; divergent but Euler-summable
/// sequences (b_k bounded or polynomially growing) converge to their
/// Abel limit.
double accelerated_alternating_sum(std::span<const double> b);

/// sum_{n >= 0} (-1)^n term(n), where term(n) >= 0 already contains any
/// t^n factor. Plain partial sums are used while the alternating-series
/// bound |term(N+1)| reaches policy.tail_tol within policy.order terms;
/// otherwise the accelerated sum is used with at most policy.order terms.
/// Throws TruncationError when neither reaches the tolerance.
SeriesEstimate sum_alternating(const std::function<double(int)>& term,
                               const TruncationPolicy& policy);

}  // namespace pascu
