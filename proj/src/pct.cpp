#include "pdem/pct.hpp"

#include <algorithm>
#include <cmath>

namespace pdem {

namespace {

// Richardson-extrapolated central differences; h is relative to r.
double first_derivative(const RealFunction& f, double r) {
  const double h = 1e-3 * r;
  const double d1 = (f(r + h) - f(r - h)) / (2.0 * h);
  const double d2 = (f(r + 0.5 * h) - f(r - 0.5 * h)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

double second_derivative(const RealFunction& f, double r) {
  const double h = 2e-3 * r;
  const double f0 = f(r);
  const double d1 = (f(r + h) - 2.0 * f0 + f(r - h)) / (h * h);
  const double hh = 0.5 * h;
  const double d2 = (f(r + hh) - 2.0 * f0 + f(r - hh)) / (hh * hh);
  return (4.0 * d2 - d1) / 3.0;
}

double schwarzian_like(double x, double dx, double d2x) {
  const double ratio = dx / x;
  return d2x / x - 1.5 * ratio * ratio;
}

double angular_mismatch(double r, const Geometry& geom, double Lambda, double m, double dm,
                        double d2m, double q, double dq, double d2q, double d3q) {
  const double LD = Lambda + 0.5 * (geom.D() - 3);
  const double lD = geom.lD();
  const double lhs = LD * (LD + 1.0) * (dq / q) * (dq / q);
  const double rhs = lD * (lD + 1.0) / (r * r) - 0.5 * (geom.D() - 1) / r * (dm / m) -
                     0.5 * (schwarzian_like(m, dm, d2m) - schwarzian_like(dq, d2q, d3q));
  return std::abs(lhs - rhs);
}

}  // namespace

PctMap::PctMap(const MassProfile& mass) : mass_(mass), nu_(mass.nu()) {}

double PctMap::q(double r) const { return std::pow(r, nu_); }
double PctMap::dq(double r) const { return nu_ * std::pow(r, nu_ - 1.0); }
double PctMap::d2q(double r) const { return nu_ * (nu_ - 1.0) * std::pow(r, nu_ - 2.0); }
double PctMap::d3q(double r) const {
  return nu_ * (nu_ - 1.0) * (nu_ - 2.0) * std::pow(r, nu_ - 3.0);
}
double PctMap::g(double r) const { return std::sqrt(dq(r) / mass_(r)); }

PctMap build_map(const MassProfile& mass) { return PctMap(mass); }

double map_energy(const PctMap& map, double reference_energy) {
  return map.energy_scale() * reference_energy;
}

RealFunction map_potential(const PctMap& map, RealFunction reference_potential) {
  return [map, ref = std::move(reference_potential)](double r) {
    return map.energy_scale() * ref(map.q(r));
  };
}

RealFunction map_wavefunction(const PctMap& map, RealFunction reference_wavefunction) {
  return [map, ref = std::move(reference_wavefunction)](double r) {
    return ref(map.q(r)) / map.g(r);
  };
}

std::vector<double> default_residual_radii() {
  std::vector<double> radii(20);
  for (std::size_t i = 0; i < radii.size(); ++i)
    radii[i] = 0.1 * std::pow(100.0, static_cast<double>(i) / (radii.size() - 1));
  return radii;
}

double angular_map_residual(const PctMap& map, const Geometry& geom, double Lambda,
                            std::span<const double> radii) {
  const double m0 = map.mass().m0();
  const double lambda = map.mass().lambda();
  double worst = 0.0;
  for (double r : radii) {
    const double m = m0 * std::pow(r, lambda);
    const double dm = m0 * lambda * std::pow(r, lambda - 1.0);
    const double d2m = m0 * lambda * (lambda - 1.0) * std::pow(r, lambda - 2.0);
    worst = std::max(worst, angular_mismatch(r, geom, Lambda, m, dm, d2m, map.q(r), map.dq(r),
                                             map.d2q(r), map.d3q(r)));
  }
  return worst;
}

double angular_map_residual(const PctMap& map, const Geometry& geom, double Lambda) {
  const auto radii = default_residual_radii();
  return angular_map_residual(map, geom, Lambda, radii);
}

double angular_map_residual_numeric(const RealFunction& mass, const RealFunction& q,
                                    const Geometry& geom, double Lambda,
                                    std::span<const double> radii) {
  const RealFunction dq = [&](double r) { return first_derivative(q, r); };
  double worst = 0.0;
  for (double r : radii) {
    worst = std::max(worst, angular_mismatch(r, geom, Lambda, mass(r), first_derivative(mass, r),
                                             second_derivative(mass, r), q(r), dq(r),
                                             second_derivative(q, r),
                                             second_derivative(dq, r)));
  }
  return worst;
}

double transformation_condition_residual(const PctMap& map, std::span<const double> radii) {
  const RealFunction dq = [&](double r) { return map.dq(r); };
  const RealFunction g = [&](double r) { return map.g(r); };
  const RealFunction m = [&](double r) { return map.mass()(r); };
  double worst = 0.0;
  for (double r : radii) {
    const double value = first_derivative(dq, r) / map.dq(r) - 2.0 * first_derivative(g, r) /
                         map.g(r) - first_derivative(m, r) / m(r);
    worst = std::max(worst, std::abs(value));
  }
  return worst;
}

}  // namespace pdem
