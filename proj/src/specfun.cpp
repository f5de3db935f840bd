#include "pdem/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "pdem/error.hpp"

namespace pdem {

namespace {

// Error-free transformations. `dd` is an unevaluated sum hi + lo.
struct dd {
  double hi;
  double lo;
};

dd two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

dd quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

dd two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

dd mul(dd a, double b) {
  dd p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

dd sub(dd a, dd b) {
  dd s = two_sum(a.hi, -b.hi);
  s.lo += a.lo - b.lo;
  return quick_two_sum(s.hi, s.lo);
}

dd div(dd a, dd b) {
  const double q1 = a.hi / b.hi;
  const dd r = sub(a, mul(b, q1));
  const double q2 = r.hi / b.hi;
  return quick_two_sum(q1, q2);
}

}  // namespace

KummerPoly::KummerPoly(int n, double b) : n_(n), b_(b) {
  if (n < 0) throw InvalidParameter("Kummer degree n must be non-negative");
  if (!(b > 0.0) || !std::isfinite(b))
    throw InvalidParameter("Kummer parameter b must be positive");
  coeffs_.reserve(static_cast<std::size_t>(n) + 1);
  dd c{1.0, 0.0};
  coeffs_.emplace_back(c.hi, c.lo);
  for (int k = 0; k < n; ++k) {
    const dd denom = mul(two_sum(b, static_cast<double>(k)), static_cast<double>(k + 1));
    c = div(mul(c, static_cast<double>(k - n)), denom);
    coeffs_.emplace_back(c.hi, c.lo);
  }
}

double KummerPoly::operator()(double x) const {
  double s = coeffs_.back().first;
  double err = coeffs_.back().second;
  for (int k = n_ - 1; k >= 0; --k) {
    const auto [hi, lo] = coeffs_[static_cast<std::size_t>(k)];
    const dd p = two_prod(s, x);
    const dd t = two_sum(p.hi, hi);
    s = t.hi;
    err = err * x + (p.lo + t.lo + lo);
  }
  return s + err;
}

double KummerPoly::derivative(double x) const {
  if (n_ == 0) return 0.0;
  return -static_cast<double>(n_) / b_ * KummerPoly(n_ - 1, b_ + 1.0)(x);
}

double KummerPoly::second_derivative(double x) const {
  if (n_ < 2) return 0.0;
  const double n = n_;
  return n * (n - 1.0) / (b_ * (b_ + 1.0)) * KummerPoly(n_ - 2, b_ + 2.0)(x);
}

double KummerPoly::abs_series(double x) const {
  const double ax = std::abs(x);
  double s = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) s = s * ax + std::abs(it->first);
  return s;
}

double kummer_terminating(int n, double b, double x) { return KummerPoly(n, b)(x); }

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma requires x > 0");
  if (x < 0.5) {
    // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
  }
  static constexpr double g = 7.0;
  static constexpr std::array<double, 9> c = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  const double z = x - 1.0;
  double series = c[0];
  for (std::size_t i = 1; i < c.size(); ++i) series += c[i] / (z + static_cast<double>(i));
  const double t = z + g + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
         std::log(series);
}

}  // namespace pdem
