#pragma once

#include <utility>
#include <vector>

namespace pdem {

/// Terminating confluent hypergeometric series F(-n, b; x), a degree-n polynomial.
///
/// Coefficients (-n)_k / ((b)_k k!) are generated once in double-double precision
/// and the polynomial is evaluated with a compensated Horner scheme, so the result
/// stays accurate to a few ulps even where the alternating terms cancel heavily
/// (large x, near the polynomial's roots).
class KummerPoly {
public:
  /// Throws InvalidParameter if n < 0 or b <= 0.
  KummerPoly(int n, double b);

  int degree() const noexcept { return n_; }
  double b() const noexcept { return b_; }
  /// Leading double part of coefficient k.
  double coefficient(int k) const { return coeffs_.at(k).first; }

  double operator()(double x) const;
  /// d/dx F(-n, b; x) = (-n/b) F(-n+1, b+1; x)
  double derivative(double x) const;
  /// n(n-1) / (b(b+1)) F(-n+2, b+2; x)
  double second_derivative(double x) const;
  /// sum_k |c_k| |x|^k, an upper bound for |F(x)| used for tail estimates.
  double abs_series(double x) const;

private:
  int n_;
  double b_;
  std::vector<std::pair<double, double>> coeffs_;  // (hi, lo)
};

/// F(-n, b; x). Throws InvalidParameter if n < 0 or b <= 0.
double kummer_terminating(int n, double b, double x);

/// ln Gamma(x) for x > 0 (Lanczos, g = 7, nine coefficients). Throws DomainError for x <= 0.
double log_gamma(double x);

}  // namespace pdem
