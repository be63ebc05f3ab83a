#pragma once

#include <complex>
#include <span>
#include <vector>

namespace pascu {

using Complex = std::complex<double>;

struct TruncationPolicy {
  int order = 400;
  double tail_tol = 1e-10;

  void validate() const;
};

/// Truncated Taylor series sum_{n=0}^{N} a_n z^n.
class PowerSeries {
 public:
  PowerSeries() = default;
  explicit PowerSeries(std::vector<Complex> coeffs);

  /// f(z) = z, padded with zeros up to `order`.
  static PowerSeries identity(int order);
  /// 1/(1 - z) truncated at `order`.
  static PowerSeries geometric(int order);

  int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  Complex operator[](int n) const { return n <= order() ? coeffs_[n] : Complex{}; }
  Complex& operator[](int n) { return coeffs_.at(n); }

  Complex evaluate(Complex z) const;
  /// Term-wise derivative, one order shorter.
  PowerSeries derivative() const;

  /// Upper estimate of sum_{n > N} |a_n| r^n from the last coefficients,
  /// assuming they do not grow past N.
  double tail_estimate(double r) const;

  bool normalized(double tol = 1e-12) const;

 private:
  std::vector<Complex> coeffs_;
};

/// Coefficient-wise product; the result has the smaller of the two orders.
PowerSeries hadamard(const PowerSeries& f, const PowerSeries& g);

}  // namespace pascu
