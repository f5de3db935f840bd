#pragma once

// Closed-form bound states of the power-law effective-mass radial equation
//
//   R'' + (m'/m) ((D-1)/(2r) R - R') - l_D(l_D+1)/r^2 R + 2 m(r) (E - V(r)) R = 0,
//   m(r) = m0 r^lambda,
//
// for the pseudoharmonic and modified Kratzer families, plus the unit-mass
// reference solutions they are mapped from.

#include <functional>

#include "pdem/model.hpp"
#include "pdem/specfun.hpp"

namespace pdem {

/// r -> N r^power exp(-decay r^exponent) F(-n, b; arg_scale r^exponent).
///
/// Every bound state of both families has this shape. Values are assembled in
/// log space, so large powers and steep Gaussian tails neither overflow nor lose
/// precision before the final exponential.
class RadialForm {
public:
  RadialForm(double power, double decay, double exponent, double arg_scale, KummerPoly poly);

  double power() const noexcept { return power_; }
  double decay() const noexcept { return decay_; }
  double exponent() const noexcept { return exponent_; }
  double arg_scale() const noexcept { return arg_scale_; }
  const KummerPoly& poly() const noexcept { return poly_; }
  /// ln N; zero for an unnormalized form.
  double log_scale() const noexcept { return log_scale_; }

  double operator()(double r) const;

  struct Derivatives {
    double value;
    double first;
    double second;
  };
  /// R, R' and R'' from the closed form (no finite differences).
  Derivatives derivatives(double r) const;

  /// Upper bound on ln|R(r)| (replaces |F| by its absolute-value series).
  double log_envelope(double r) const;

  /// Copy with N multiplied by exp(delta).
  RadialForm rescaled(double delta_log_scale) const;

private:
  double power_;
  double decay_;
  double exponent_;
  double arg_scale_;
  KummerPoly poly_;
  double log_scale_ = 0.0;
};

/// Result of normalizing a RadialForm under the flat measure dr.
struct Normalized {
  RadialForm form;
  /// Factor multiplying the unnormalized form.
  double norm_constant;
  /// Beyond this radius R^2 is below 1e-16 of its peak.
  double tail_radius;
};

/// Throws QuadratureFailure if the normalization integral does not converge.
Normalized normalize(const RadialForm& unnormalized);

/// One bound state.
struct RadialSolution {
  int n;
  Geometry geom;
  double energy;
  /// Constant multiplying r^power exp(-decay r^exponent) F(...) so that int R^2 dr = 1.
  double norm_constant;
  double tail_radius;
  RadialForm form;

  double operator()(double r) const { return form(r); }
};

/// int_0^inf R1 R2 dr by adaptive quadrature.
double overlap(const RadialSolution& a, const RadialSolution& b);

// -- pseudoharmonic ----------------------------------------------------------

/// E = (2+lambda)/2 [-eta re^2 + 1 + 2n + sqrt((Lambda + D/2 - 1)^2 + eta^2 re^4)] C
double pseudoharmonic_energy(int n, const Geometry& geom, const MassProfile& mass,
                             const PseudoharmonicParams& params);
/// Same with an explicit effective angular momentum.
double pseudoharmonic_energy(int n, int D, double Lambda, const MassProfile& mass,
                             const PseudoharmonicParams& params);

/// V(r) = (m0/2) (r^nu - re^2 / r^nu)^2 C^2. Throws DomainError for r <= 0.
double pseudoharmonic_potential(double r, const MassProfile& mass,
                                const PseudoharmonicParams& params);

/// R ~ r^{nu (K + 1/2) + lambda/4} exp(-eta r^{2+lambda} / 2) F(-n, K+1; eta r^{2+lambda}),
/// K = sqrt((Lambda + D/2 - 1)^2 + eta^2 re^4), normalized numerically.
RadialSolution pseudoharmonic_state(int n, const Geometry& geom, const MassProfile& mass,
                                    const PseudoharmonicParams& params);
RadialSolution pseudoharmonic_state(int n, const Geometry& geom, double Lambda,
                                    const MassProfile& mass, const PseudoharmonicParams& params);

// -- modified Kratzer --------------------------------------------------------

/// E = P - 32 m0 re^2 P^2 / [(1+2n)(2+lambda) + W]^2,
/// W = sqrt((2+lambda)^2 (D + 2 Lambda - 2)^2 + 32 m0 re^2 P).
double kratzer_energy(int n, const Geometry& geom, const MassProfile& mass,
                      const KratzerParams& params);
double kratzer_energy(int n, int D, double Lambda, const MassProfile& mass,
                      const KratzerParams& params);

/// V(r) = P ((r^nu - re) / r^nu)^2. Throws DomainError for r <= 0.
double kratzer_potential(double r, const MassProfile& mass, const KratzerParams& params);

/// Decay constant gamma of exp(-gamma r^nu).
double kratzer_decay(int n, int D, double Lambda, const MassProfile& mass,
                     const KratzerParams& params);

/// R ~ r^{(2+lambda+W)/4 + lambda/4} exp(-gamma r^nu) F(-n, 1 + W/(2+lambda); 2 gamma r^nu).
RadialSolution kratzer_state(int n, const Geometry& geom, const MassProfile& mass,
                             const KratzerParams& params);
RadialSolution kratzer_state(int n, const Geometry& geom, double Lambda, const MassProfile& mass,
                             const KratzerParams& params);

// -- dispatch on a validated bundle -----------------------------------------

double analytic_energy(const Case& c, int n);
/// Variant used for fault injection: the closed forms see Lambda + delta.
double analytic_energy(const Case& c, int n, double Lambda);
RadialSolution analytic_state(const Case& c, int n);
double potential_value(const Case& c, double r);
std::function<double(double)> potential_function(const Case& c);

// -- unit-mass reference problem --------------------------------------------

struct ReferenceSolution {
  double energy;
  /// Normalized reference state in the variable s.
  RadialSolution state;
  /// Closed-form normalization of the F-based form (compare with state.norm_constant).
  double analytic_norm;
};

/// Constant unit-mass solution with angular momentum Lambda (any real value
/// with a real shifted index), the source of the canonical map.
ReferenceSolution constant_mass_reference(PotentialKind kind, int n, int D, double Lambda,
                                          double Ve, double re);

/// Reference potential V~(s) for the given family.
double reference_potential(PotentialKind kind, double s, double Ve, double re);

/// Normalization of s^{K+1/2} e^{-eta s^2/2} L_n^{(K)}(eta s^2), i.e. the
/// constant written with a Laguerre polynomial instead of the Kummer series:
/// sqrt(2 eta^{K+1} n! / Gamma(n + K + 1)).
double pseudoharmonic_laguerre_norm(int n, int D, double Lambda, double Ve, double re);

}  // namespace pdem
