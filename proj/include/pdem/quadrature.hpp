#pragma once

#include <functional>

namespace pdem {

struct QuadratureResult {
  double value;
  double error;
};

/// Adaptive Gauss-Kronrod (15/31) integral of f over [a, b], split into `panels`
/// equal sub-intervals. Throws QuadratureFailure if the value or the error
/// estimate is not finite, or the estimated error exceeds
/// max(rel_tol * |value|, abs_tol).
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-13, double abs_tol = 0.0, int panels = 16);

}  // namespace pdem
