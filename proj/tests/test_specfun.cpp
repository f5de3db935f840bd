#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "pdem/error.hpp"
#include "pdem/specfun.hpp"
#include "support/oracles.hpp"

using namespace pdem;

TEST_CASE("Kummer series equals scaled Laguerre polynomial") {
  double worst = 0.0;
  for (int n = 0; n <= 20; ++n)
    for (double b : {0.5, 1.0, 1.5, 2.75, 4.0, 7.3, 12.1})
      for (double x = 0.0; x <= 4.0 * n + 12.0; x += 0.173) {
        const long double ref = oracle::kummer_from_laguerre(n, b, x);
        if (ref == 0.0L) continue;
        const double got = kummer_terminating(n, b, x);
        worst = std::max(worst, static_cast<double>(std::abs((got - ref) / ref)));
      }
  CHECK(worst <= 1e-12);
}

TEST_CASE("derivative contiguous relation against finite differences") {
  for (int n : {1, 2, 5, 9, 14})
    for (double b : {0.8, 2.5, 6.0}) {
      const KummerPoly F(n, b);
      std::vector<double> xs, exact;
      for (double x = 0.3; x < 2.0 * n + 6.0; x += 0.37) {
        xs.push_back(x);
        exact.push_back(F.derivative(x));
      }
      double scale = 0.0;
      for (double d : exact) scale = std::max(scale, std::abs(d));
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto fd = oracle::central_differences([&](double x) { return F(x); }, xs[i], 1e-3);
        CHECK(std::abs(fd.d1 - exact[i]) <= 1e-8 * std::max(std::abs(exact[i]), 1e-3 * scale));
      }
    }
}

TEST_CASE("second derivative against the Laguerre derivative identity") {
  // F(-n, b; x) = c L_n^{(b-1)}(x) and L_n^{(a)}'' = L_{n-2}^{(a+2)}
  for (int n = 2; n <= 20; ++n)
    for (double b : {0.8, 2.5, 6.0}) {
      const KummerPoly F(n, b);
      long double c = 1.0L;
      for (int k = 1; k <= n; ++k) c *= static_cast<long double>(k) / (b - 1.0L + k);
      for (double x = 0.0; x < 4.0 * n + 6.0; x += 0.29) {
        const long double ref = c * oracle::laguerre(n - 2, b + 1.0L, x);
        if (ref == 0.0L) continue;
        CHECK(std::abs((F.second_derivative(x) - ref) / ref) <= 1e-11);
      }
    }
}

TEST_CASE("terminating series basics") {
  CHECK(kummer_terminating(0, 3.0, 17.0) == 1.0);
  CHECK(kummer_terminating(6, 1.5, 0.0) == 1.0);
  CHECK(kummer_terminating(1, 4.0, 2.0) == doctest::Approx(0.5));
  // F(-2, b; x) = 1 - 2x/b + x^2/(b(b+1))
  CHECK(kummer_terminating(2, 3.0, 1.5) == doctest::Approx(1 - 1.0 + 2.25 / 12.0).epsilon(1e-15));
  const KummerPoly F(4, 2.5);
  CHECK(F.degree() == 4);
  CHECK(F.coefficient(1) == doctest::Approx(-4.0 / 2.5));
  CHECK(F.abs_series(3.0) >= std::abs(F(3.0)));
  CHECK_THROWS_AS(KummerPoly(-1, 1.0), InvalidParameter);
  CHECK_THROWS_AS(KummerPoly(2, 0.0), InvalidParameter);
}

TEST_CASE("log gamma against libm") {
  for (double x = 0.01; x < 200.0; x *= 1.07) {
    const double ref = std::lgamma(x);
    CHECK(std::abs(log_gamma(x) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
  }
  for (double x : {1.0, 2.0}) CHECK(std::abs(log_gamma(x)) <= 1e-14);
  CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-14));
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(log_gamma(-1.5), DomainError);
}
