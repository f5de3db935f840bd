#pragma once

// Point canonical transformation s = q(r) = r^nu, R(r) = R~(q(r)) / g(r), which
// carries the unit-mass reference problem onto the effective-mass equation.

#include <functional>
#include <span>
#include <vector>

#include "pdem/model.hpp"

namespace pdem {

using RealFunction = std::function<double(double)>;

/// q(r) = r^nu with nu = 1 + lambda/2 and g(r)^2 = q'(r)/m(r) = (nu/m0) r^{-lambda/2}.
class PctMap {
public:
  explicit PctMap(const MassProfile& mass);

  double nu() const noexcept { return nu_; }
  const MassProfile& mass() const noexcept { return mass_; }

  double q(double r) const;
  double dq(double r) const;
  double d2q(double r) const;
  double d3q(double r) const;
  double g(double r) const;
  /// (q')^2 / m, independent of r for this family: nu^2 / m0.
  double energy_scale() const noexcept { return nu_ * nu_ / mass_.m0(); }

private:
  MassProfile mass_;
  double nu_;
};

PctMap build_map(const MassProfile& mass);

/// E = energy_scale * E~
double map_energy(const PctMap& map, double reference_energy);

/// r -> energy_scale * V~(q(r))
RealFunction map_potential(const PctMap& map, RealFunction reference_potential);

/// r -> R~(q(r)) / g(r)
RealFunction map_wavefunction(const PctMap& map, RealFunction reference_wavefunction);

/// Radii used when none are given: 20 log-spaced points on [0.1, 10].
std::vector<double> default_residual_radii();

/// Max over `radii` of |LHS - RHS| in the angular-momentum matching condition
///   Lambda_D(Lambda_D+1) (q'/q)^2
///     = l_D(l_D+1)/r^2 - (D-1)/(2r) m'/m - [F(m) - F(q')]/2,
/// F(x) = x''/x - (3/2)(x'/x)^2, with Lambda_D = Lambda + (D-3)/2.
/// Derivatives of m and q are taken analytically.
double angular_map_residual(const PctMap& map, const Geometry& geom, double Lambda,
                            std::span<const double> radii);
double angular_map_residual(const PctMap& map, const Geometry& geom, double Lambda);

/// Same condition for an arbitrary mass profile and mapping function, with all
/// derivatives by Richardson-extrapolated central differences. Only checks a
/// candidate (m, q) pair; nothing downstream can solve with it.
double angular_map_residual_numeric(const RealFunction& mass, const RealFunction& q,
                                    const Geometry& geom, double Lambda,
                                    std::span<const double> radii);

/// Max over `radii` of |q''/q' - 2 g'/g - m'/m| with numerical derivatives of the
/// map's q' and g; vanishes whenever q' = m g^2.
double transformation_condition_residual(const PctMap& map, std::span<const double> radii);

}  // namespace pdem
