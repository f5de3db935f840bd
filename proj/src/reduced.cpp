#include "pdem/reduced.hpp"

#include <cmath>

namespace pdem::reduced {

namespace {

double sq(double x) { return x * x; }

// Shared tail of every pseudoharmonic reduction once the square root Y is known.
double pseudoharmonic_energy_from(double Y, int n, const MassProfile& mass,
                                  const PseudoharmonicParams& p) {
  const double nu = mass.nu();
  return p.eta * nu * nu / mass.m0() * (-p.eta * sq(p.re) + 1.0 + 2.0 * n + Y);
}

FormParameters pseudoharmonic_form_from(double Y, const MassProfile& mass,
                                        const PseudoharmonicParams& p) {
  const double lambda = mass.lambda();
  return {(1.0 + 0.5 * lambda) * (Y + 0.5) + 0.25 * lambda, 0.5 * p.eta, 2.0 + lambda, Y + 1.0,
          p.eta};
}

double eta_re2_sq(const PseudoharmonicParams& p) { return sq(p.eta * sq(p.re)); }

double y_d1(const MassProfile& mass, const PseudoharmonicParams& p) {
  const double lambda = mass.lambda();
  return std::sqrt(sq((1.0 + lambda) / (2.0 + lambda)) + eta_re2_sq(p));
}

double y_d2(int M, const MassProfile& mass, const PseudoharmonicParams& p) {
  const double lambda = mass.lambda();
  return std::sqrt((4.0 * M * M + lambda * lambda) / sq(2.0 + lambda) + eta_re2_sq(p));
}

double y_d3(int l, const MassProfile& mass, const PseudoharmonicParams& p) {
  const double lambda = mass.lambda();
  return std::sqrt((sq(2.0 * l + 1.0) + lambda * (lambda - 2.0)) / sq(2.0 + lambda) +
                   eta_re2_sq(p));
}

// Kratzer: everything follows from Q, the Kummer parameter b minus one.
double kratzer_energy_from_root(double root, int n, const MassProfile& mass,
                                const KratzerParams& p) {
  const double denom = (1.0 + 2.0 * n) * (2.0 + mass.lambda()) + root;
  return p.P - 32.0 * mass.m0() * sq(p.re) * sq(p.P) / sq(denom);
}

FormParameters kratzer_form_from(double Q, int n, const MassProfile& mass, const KratzerParams& p) {
  const double lambda = mass.lambda();
  const double nu = 1.0 + 0.5 * lambda;
  const double gamma = 16.0 * mass.m0() * p.re * p.P / sq(2.0 + lambda) / (1.0 + 2.0 * n + Q);
  return {0.5 * nu * (1.0 + Q) + 0.25 * lambda, gamma, nu, 1.0 + Q, 2.0 * gamma};
}

double q_d1(const MassProfile& mass, const KratzerParams& p) {
  const double lambda = mass.lambda();
  return 2.0 * std::sqrt(sq((1.0 + lambda) / (2.0 + lambda)) + 2.0 * p.Ve * sq(p.re));
}

double q_d2(int M, const MassProfile& mass, const KratzerParams& p) {
  const double lambda = mass.lambda();
  return std::sqrt((16.0 * M * M + 4.0 * lambda * lambda) / sq(2.0 + lambda) +
                   8.0 * p.Ve * sq(p.re));
}

double q_d3(int l, const MassProfile& mass, const KratzerParams& p) {
  const double lambda = mass.lambda();
  return 2.0 * std::sqrt((sq(1.0 + 2.0 * l) + lambda * (lambda - 2.0)) / sq(2.0 + lambda) +
                         2.0 * p.Ve * sq(p.re));
}

}  // namespace

FormParameters parameters_of(const RadialForm& form) {
  return {form.power(), form.decay(), form.exponent(), form.poly().b(), form.arg_scale()};
}

double pseudoharmonic_energy_d1(int n, const MassProfile& mass, const PseudoharmonicParams& p) {
  return pseudoharmonic_energy_from(y_d1(mass, p), n, mass, p);
}
double pseudoharmonic_energy_d2(int n, int M, const MassProfile& mass,
                                const PseudoharmonicParams& p) {
  return pseudoharmonic_energy_from(y_d2(M, mass, p), n, mass, p);
}
double pseudoharmonic_energy_d3(int n, int l, const MassProfile& mass,
                                const PseudoharmonicParams& p) {
  return pseudoharmonic_energy_from(y_d3(l, mass, p), n, mass, p);
}

FormParameters pseudoharmonic_form_d1(int, const MassProfile& mass, const PseudoharmonicParams& p) {
  return pseudoharmonic_form_from(y_d1(mass, p), mass, p);
}
FormParameters pseudoharmonic_form_d2(int, int M, const MassProfile& mass,
                                      const PseudoharmonicParams& p) {
  return pseudoharmonic_form_from(y_d2(M, mass, p), mass, p);
}
FormParameters pseudoharmonic_form_d3(int, int l, const MassProfile& mass,
                                      const PseudoharmonicParams& p) {
  return pseudoharmonic_form_from(y_d3(l, mass, p), mass, p);
}

double kratzer_energy_d1(int n, const MassProfile& mass, const KratzerParams& p) {
  const double lambda = mass.lambda();
  return kratzer_energy_from_root(
      2.0 * std::sqrt(sq(1.0 + lambda) + 8.0 * mass.m0() * sq(p.re) * p.P), n, mass, p);
}
double kratzer_energy_d2(int n, int M, const MassProfile& mass, const KratzerParams& p) {
  const double lambda = mass.lambda();
  return kratzer_energy_from_root(
      std::sqrt(16.0 * M * M + 32.0 * mass.m0() * sq(p.re) * p.P + 4.0 * lambda * lambda), n,
      mass, p);
}
double kratzer_energy_d3(int n, int l, const MassProfile& mass, const KratzerParams& p) {
  const double lambda = mass.lambda();
  return kratzer_energy_from_root(
      2.0 * std::sqrt(sq(1.0 + 2.0 * l) + 8.0 * mass.m0() * sq(p.re) * p.P +
                      lambda * (lambda - 2.0)),
      n, mass, p);
}

FormParameters kratzer_form_d1(int n, const MassProfile& mass, const KratzerParams& p) {
  return kratzer_form_from(q_d1(mass, p), n, mass, p);
}
FormParameters kratzer_form_d2(int n, int M, const MassProfile& mass, const KratzerParams& p) {
  return kratzer_form_from(q_d2(M, mass, p), n, mass, p);
}
FormParameters kratzer_form_d3(int n, int l, const MassProfile& mass, const KratzerParams& p) {
  return kratzer_form_from(q_d3(l, mass, p), n, mass, p);
}

}  // namespace pdem::reduced
