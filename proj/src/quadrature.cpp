#include "pdem/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include "pdem/error.hpp"

namespace pdem {

namespace {

struct Segment {
  double lo;
  double hi;
  double value;
  double error;

  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment rule(const std::function<double(double)>& f, double lo, double hi) {
  using boost::math::quadrature::gauss_kronrod;
  double err = 0.0;
  const double v = gauss_kronrod<double, 31>::integrate(f, lo, hi, 0, 0.0, &err);
  return {lo, hi, v, err};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol, double abs_tol, int panels) {
  if (!(b > a)) throw QuadratureFailure("integration interval is empty");
  constexpr int kMaxSegments = 20000;

  // Global adaptive bisection: always split the segment with the largest error.
  std::priority_queue<Segment> queue;
  double value = 0.0;
  double error = 0.0;
  const double width = (b - a) / panels;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * width;
    const double hi = i + 1 == panels ? b : lo + width;
    const Segment s = rule(f, lo, hi);
    value += s.value;
    error += s.error;
    queue.push(s);
  }
  for (int count = panels; count < kMaxSegments; ++count) {
    if (!std::isfinite(value) || !std::isfinite(error)) break;
    if (error <= std::max(rel_tol * std::abs(value), abs_tol)) break;
    const Segment worst = queue.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) break;
    queue.pop();
    const Segment left = rule(f, worst.lo, mid);
    const Segment right = rule(f, mid, worst.hi);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }

  // re-sum to shed the drift of the running updates
  value = 0.0;
  error = 0.0;
  while (!queue.empty()) {
    value += queue.top().value;
    error += queue.top().error;
    queue.pop();
  }
  if (!std::isfinite(value) || !std::isfinite(error) ||
      error > std::max(rel_tol * std::abs(value), abs_tol)) {
    std::ostringstream msg;
    msg << "quadrature did not converge on [" << a << ", " << b << "]: value " << value
        << ", error estimate " << error;
    throw QuadratureFailure(msg.str());
  }
  return {value, error};
}

}  // namespace pdem
