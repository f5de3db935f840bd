#include "pdem/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pdem/quadrature.hpp"

namespace pdem {

namespace {

constexpr double kTailLogMargin = 20.0;  // ln|R| below peak at the tail radius (R^2 < 1e-17)

void require_positive_radius(double r) {
  if (!(r > 0.0)) throw DomainError("potential requires r > 0");
}

void require_quantum_number(int n) {
  if (n < 0) throw InvalidParameter("radial quantum number n must be non-negative");
}

double log_abs_unscaled(const RadialForm& f, double r) {
  const double x = f.arg_scale() * std::pow(r, f.exponent());
  const double F = f.poly()(x);
  if (F == 0.0) return -std::numeric_limits<double>::infinity();
  return f.power() * std::log(r) - f.decay() * std::pow(r, f.exponent()) + std::log(std::abs(F));
}

}  // namespace

RadialForm::RadialForm(double power, double decay, double exponent, double arg_scale,
                       KummerPoly poly)
    : power_(power), decay_(decay), exponent_(exponent), arg_scale_(arg_scale),
      poly_(std::move(poly)) {
  if (!(power > 0.0)) throw InvalidParameter("radial form must vanish at the origin (power > 0)");
  if (!(decay > 0.0) || !(exponent > 0.0))
    throw InvalidParameter("radial form must decay at infinity");
}

double RadialForm::operator()(double r) const {
  if (!(r > 0.0)) return 0.0;
  const double rp = std::pow(r, exponent_);
  const double F = poly_(arg_scale_ * rp);
  if (F == 0.0) return 0.0;
  const double ln = log_scale_ + power_ * std::log(r) - decay_ * rp + std::log(std::abs(F));
  return std::copysign(std::exp(ln), F);
}

RadialForm::Derivatives RadialForm::derivatives(double r) const {
  if (!(r > 0.0)) throw DomainError("radial derivatives require r > 0");
  const double rp = std::pow(r, exponent_);
  const double x = arg_scale_ * rp;
  const double w = std::exp(log_scale_ + power_ * std::log(r) - decay_ * rp);
  const double u1 = power_ / r - decay_ * exponent_ * rp / r;
  const double u2 = -power_ / (r * r) - decay_ * exponent_ * (exponent_ - 1.0) * rp / (r * r);
  const double x1 = exponent_ * x / r;
  const double x2 = exponent_ * (exponent_ - 1.0) * x / (r * r);
  const double F = poly_(x);
  const double Fx = poly_.derivative(x);
  const double F1 = Fx * x1;
  const double F2 = poly_.second_derivative(x) * x1 * x1 + Fx * x2;
  return {w * F, w * (u1 * F + F1), w * ((u2 + u1 * u1) * F + 2.0 * u1 * F1 + F2)};
}

double RadialForm::log_envelope(double r) const {
  const double rp = std::pow(r, exponent_);
  return log_scale_ + power_ * std::log(r) - decay_ * rp +
         std::log(poly_.abs_series(arg_scale_ * rp));
}

RadialForm RadialForm::rescaled(double delta_log_scale) const {
  RadialForm copy = *this;
  copy.log_scale_ += delta_log_scale;
  return copy;
}

Normalized normalize(const RadialForm& unnormalized) {
  const RadialForm base = unnormalized.rescaled(-unnormalized.log_scale());
  const double r0 = std::pow(1.0 / base.decay(), 1.0 / base.exponent());

  // Locate the peak of |R| on a geometric scan.
  constexpr int kSamples = 800;
  const double lo = r0 * 1e-6;
  const double hi = r0 * 1e3;
  double peak_log = -std::numeric_limits<double>::infinity();
  double peak_r = r0;
  for (int i = 0; i <= kSamples; ++i) {
    const double r = lo * std::pow(hi / lo, static_cast<double>(i) / kSamples);
    const double v = log_abs_unscaled(base, r);
    if (v > peak_log) {
      peak_log = v;
      peak_r = r;
    }
  }
  if (!std::isfinite(peak_log)) throw QuadratureFailure("radial form has no finite peak");

  // Walk out until the envelope is certifiably negligible.
  double tail = peak_r;
  for (int guard = 0; base.log_envelope(tail) > peak_log - kTailLogMargin; ++guard) {
    if (guard > 5000) throw QuadratureFailure("could not bound the tail of the radial form");
    tail *= 1.01;
  }

  const double shift = peak_log;
  auto integrand = [&](double r) {
    if (!(r > 0.0)) return 0.0;
    const double rp = std::pow(r, base.exponent());
    const double F = base.poly()(base.arg_scale() * rp);
    const double e = std::exp(base.power() * std::log(r) - base.decay() * rp - shift);
    return (e * F) * (e * F);
  };
  const auto result = integrate(integrand, 0.0, tail, 1e-13);
  if (!(result.value > 0.0)) throw QuadratureFailure("normalization integral is not positive");

  const double log_norm = -shift - 0.5 * std::log(result.value);
  return Normalized{base.rescaled(log_norm), std::exp(log_norm), tail};
}

double overlap(const RadialSolution& a, const RadialSolution& b) {
  const double upper = std::max(a.tail_radius, b.tail_radius);
  return integrate([&](double r) { return a(r) * b(r); }, 0.0, upper, 1e-11, 1e-14).value;
}

// -- pseudoharmonic ----------------------------------------------------------

double pseudoharmonic_energy(int n, int D, double Lambda, const MassProfile& mass,
                             const PseudoharmonicParams& p) {
  require_quantum_number(n);
  const double X = Lambda + 0.5 * D - 1.0;
  const double er2 = p.eta * p.re * p.re;
  const double bracket = -er2 + 1.0 + 2.0 * n + std::sqrt(X * X + er2 * er2);
  return 0.5 * (2.0 + mass.lambda()) * bracket * p.C;
}

double pseudoharmonic_energy(int n, const Geometry& geom, const MassProfile& mass,
                             const PseudoharmonicParams& p) {
  require_quantum_number(n);
  const double X = shifted_angular_index(geom, mass);
  const double er2 = p.eta * p.re * p.re;
  const double bracket = -er2 + 1.0 + 2.0 * n + std::sqrt(X * X + er2 * er2);
  return 0.5 * (2.0 + mass.lambda()) * bracket * p.C;
}

double pseudoharmonic_potential(double r, const MassProfile& mass,
                                const PseudoharmonicParams& p) {
  require_positive_radius(r);
  const double rn = std::pow(r, mass.nu());
  const double t = rn - p.re * p.re / rn;
  return 0.5 * mass.m0() * t * t * p.C * p.C;
}

namespace {

RadialSolution pseudoharmonic_from_index(int n, const Geometry& geom, double X,
                                         const MassProfile& mass, const PseudoharmonicParams& p,
                                         double energy) {
  const double er2 = p.eta * p.re * p.re;
  const double K = std::sqrt(X * X + er2 * er2);
  const double lambda = mass.lambda();
  RadialForm form(mass.nu() * (K + 0.5) + 0.25 * lambda, 0.5 * p.eta, 2.0 + lambda, p.eta,
                  KummerPoly(n, K + 1.0));
  auto normalized = normalize(form);
  return RadialSolution{n, geom, energy, normalized.norm_constant, normalized.tail_radius,
                        std::move(normalized.form)};
}

}  // namespace

RadialSolution pseudoharmonic_state(int n, const Geometry& geom, const MassProfile& mass,
                                    const PseudoharmonicParams& p) {
  require_quantum_number(n);
  return pseudoharmonic_from_index(n, geom, shifted_angular_index(geom, mass), mass, p,
                                   pseudoharmonic_energy(n, geom, mass, p));
}

RadialSolution pseudoharmonic_state(int n, const Geometry& geom, double Lambda,
                                    const MassProfile& mass, const PseudoharmonicParams& p) {
  require_quantum_number(n);
  return pseudoharmonic_from_index(n, geom, Lambda + 0.5 * geom.D() - 1.0, mass, p,
                                   pseudoharmonic_energy(n, geom.D(), Lambda, mass, p));
}

// -- modified Kratzer --------------------------------------------------------

namespace {

// W = sqrt((2+lambda)^2 (2X)^2 + 32 m0 re^2 P) with X = Lambda + D/2 - 1.
double kratzer_root(double X, const MassProfile& mass, const KratzerParams& p) {
  const double two_plus = 2.0 + mass.lambda();
  const double t = two_plus * 2.0 * X;
  return std::sqrt(t * t + 32.0 * mass.m0() * p.re * p.re * p.P);
}

double kratzer_energy_from_index(int n, double X, const MassProfile& mass,
                                 const KratzerParams& p) {
  const double two_plus = 2.0 + mass.lambda();
  const double denom = (1.0 + 2.0 * n) * two_plus + kratzer_root(X, mass, p);
  return p.P - 32.0 * mass.m0() * p.re * p.re * p.P * p.P / (denom * denom);
}

double kratzer_decay_from_index(int n, double X, const MassProfile& mass,
                                const KratzerParams& p) {
  const double two_plus = 2.0 + mass.lambda();
  return 16.0 * mass.m0() * p.re * p.P /
         (two_plus * ((1.0 + 2.0 * n) * two_plus + kratzer_root(X, mass, p)));
}

RadialSolution kratzer_from_index(int n, const Geometry& geom, double X, const MassProfile& mass,
                                  const KratzerParams& p) {
  if (!(p.Ve > 0.0)) throw InvalidParameter("Kratzer bound states require Ve > 0");
  const double lambda = mass.lambda();
  const double two_plus = 2.0 + lambda;
  const double W = kratzer_root(X, mass, p);
  const double gamma = kratzer_decay_from_index(n, X, mass, p);
  RadialForm form(0.25 * (two_plus + W) + 0.25 * lambda, gamma, mass.nu(), 2.0 * gamma,
                  KummerPoly(n, 1.0 + W / two_plus));
  auto normalized = normalize(form);
  return RadialSolution{n, geom, kratzer_energy_from_index(n, X, mass, p),
                        normalized.norm_constant, normalized.tail_radius,
                        std::move(normalized.form)};
}

}  // namespace

double kratzer_energy(int n, int D, double Lambda, const MassProfile& mass,
                      const KratzerParams& p) {
  require_quantum_number(n);
  return kratzer_energy_from_index(n, Lambda + 0.5 * D - 1.0, mass, p);
}

double kratzer_energy(int n, const Geometry& geom, const MassProfile& mass,
                      const KratzerParams& p) {
  require_quantum_number(n);
  return kratzer_energy_from_index(n, shifted_angular_index(geom, mass), mass, p);
}

double kratzer_potential(double r, const MassProfile& mass, const KratzerParams& p) {
  require_positive_radius(r);
  const double rn = std::pow(r, mass.nu());
  const double t = (rn - p.re) / rn;
  return p.P * t * t;
}

double kratzer_decay(int n, int D, double Lambda, const MassProfile& mass,
                     const KratzerParams& p) {
  require_quantum_number(n);
  return kratzer_decay_from_index(n, Lambda + 0.5 * D - 1.0, mass, p);
}

RadialSolution kratzer_state(int n, const Geometry& geom, const MassProfile& mass,
                             const KratzerParams& p) {
  require_quantum_number(n);
  return kratzer_from_index(n, geom, shifted_angular_index(geom, mass), mass, p);
}

RadialSolution kratzer_state(int n, const Geometry& geom, double Lambda, const MassProfile& mass,
                             const KratzerParams& p) {
  require_quantum_number(n);
  return kratzer_from_index(n, geom, Lambda + 0.5 * geom.D() - 1.0, mass, p);
}

// -- dispatch ----------------------------------------------------------------

double analytic_energy(const Case& c, int n) {
  if (const auto* ph = std::get_if<PseudoharmonicParams>(&c.potential))
    return pseudoharmonic_energy(n, c.geom, c.mass, *ph);
  return kratzer_energy(n, c.geom, c.mass, std::get<KratzerParams>(c.potential));
}

double analytic_energy(const Case& c, int n, double Lambda) {
  if (const auto* ph = std::get_if<PseudoharmonicParams>(&c.potential))
    return pseudoharmonic_energy(n, c.geom.D(), Lambda, c.mass, *ph);
  return kratzer_energy(n, c.geom.D(), Lambda, c.mass, std::get<KratzerParams>(c.potential));
}

RadialSolution analytic_state(const Case& c, int n) {
  if (const auto* ph = std::get_if<PseudoharmonicParams>(&c.potential))
    return pseudoharmonic_state(n, c.geom, c.mass, *ph);
  return kratzer_state(n, c.geom, c.mass, std::get<KratzerParams>(c.potential));
}

double potential_value(const Case& c, double r) {
  if (const auto* ph = std::get_if<PseudoharmonicParams>(&c.potential))
    return pseudoharmonic_potential(r, c.mass, *ph);
  return kratzer_potential(r, c.mass, std::get<KratzerParams>(c.potential));
}

std::function<double(double)> potential_function(const Case& c) {
  return [c](double r) { return potential_value(c, r); };
}

// -- reference problem -------------------------------------------------------

double reference_potential(PotentialKind kind, double s, double Ve, double re) {
  require_positive_radius(s);
  if (kind == PotentialKind::pseudoharmonic) {
    const double t = s / re - re / s;
    return Ve * t * t;
  }
  const double t = (s - re) / s;
  return Ve * t * t;
}

ReferenceSolution constant_mass_reference(PotentialKind kind, int n, int D, double Lambda,
                                          double Ve, double re) {
  require_quantum_number(n);
  if (!(Ve > 0.0) || !(re > 0.0)) throw InvalidParameter("reference requires Ve > 0 and re > 0");
  const double t = D + 2.0 * Lambda - 2.0;
  const Geometry geom(D, std::max(0, static_cast<int>(std::lround(Lambda))));

  if (kind == PotentialKind::pseudoharmonic) {
    const double energy =
        -2.0 * Ve +
        std::sqrt(Ve / (2.0 * re * re)) * (4.0 * n + 2.0 + std::sqrt(t * t + 8.0 * Ve * re * re));
    const double eta = std::sqrt(2.0 * Ve) / re;
    const double K = 0.5 * std::sqrt(t * t + 8.0 * Ve * re * re);
    RadialForm form(K + 0.5, 0.5 * eta, 2.0, eta, KummerPoly(n, K + 1.0));
    auto normalized = normalize(form);
    // int s^{2K+1} e^{-eta s^2} F^2 ds = n! Gamma(K+1)^2 / (2 eta^{K+1} Gamma(n+K+1))
    const double log_norm = 0.5 * (std::log(2.0) + (K + 1.0) * std::log(eta) +
                                   log_gamma(n + K + 1.0) - log_gamma(n + 1.0) -
                                   2.0 * log_gamma(K + 1.0));
    return ReferenceSolution{
        energy,
        RadialSolution{n, geom, energy, normalized.norm_constant, normalized.tail_radius,
                       std::move(normalized.form)},
        std::exp(log_norm)};
  }

  const double H = std::sqrt(t * t + 8.0 * Ve * re * re);
  const double a = 1.0 / (4.0 * Ve * re);
  const double q = 1.0 + 2.0 * n + H;
  const double energy = Ve - 1.0 / (2.0 * a * a * q * q);
  const double k = 1.0 / (a * q);
  RadialForm form(0.5 * (1.0 + H), k, 1.0, 2.0 * k, KummerPoly(n, 1.0 + H));
  auto normalized = normalize(form);
  // With alpha = H: int s^{alpha+1} e^{-2ks} F^2 ds
  //   = (2k)^{-(alpha+2)} n! Gamma(alpha+1)^2 (2n+alpha+1) / Gamma(n+alpha+1)
  const double alpha = H;
  const double log_norm =
      0.5 * ((alpha + 2.0) * std::log(2.0 * k) + log_gamma(n + alpha + 1.0) - log_gamma(n + 1.0) -
             2.0 * log_gamma(alpha + 1.0) - std::log(2.0 * n + alpha + 1.0));
  return ReferenceSolution{
      energy,
      RadialSolution{n, geom, energy, normalized.norm_constant, normalized.tail_radius,
                     std::move(normalized.form)},
      std::exp(log_norm)};
}

double pseudoharmonic_laguerre_norm(int n, int D, double Lambda, double Ve, double re) {
  const double t = D + 2.0 * Lambda - 2.0;
  const double K = 0.5 * std::sqrt(t * t + 8.0 * Ve * re * re);
  const double eta = std::sqrt(2.0 * Ve) / re;
  return std::exp(0.5 * (std::log(2.0) + (K + 1.0) * std::log(eta) + log_gamma(n + 1.0) -
                         log_gamma(n + K + 1.0)));
}

}  // namespace pdem
