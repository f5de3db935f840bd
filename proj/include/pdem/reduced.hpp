#pragma once

// Dimension-specific forms (D = 1, 2, 3) of the closed-form energies and
// wavefunction shapes, obtained by substituting D into the general expressions
// and simplifying. They exist to cross-check the general code paths; the
// simplified square roots are written out explicitly rather than calling into
// effective_angular_momentum.

#include "pdem/analytic.hpp"

namespace pdem::reduced {

/// Shape parameters of r^power exp(-decay r^exponent) F(-n, kummer_b; arg_scale r^exponent).
struct FormParameters {
  double power;
  double decay;
  double exponent;
  double kummer_b;
  double arg_scale;
};

FormParameters parameters_of(const RadialForm& form);

// Pseudoharmonic. D = 1 covers both l_D encodings (l = 0 and l = 1).
double pseudoharmonic_energy_d1(int n, const MassProfile& mass, const PseudoharmonicParams& p);
double pseudoharmonic_energy_d2(int n, int M, const MassProfile& mass, const PseudoharmonicParams& p);
double pseudoharmonic_energy_d3(int n, int l, const MassProfile& mass, const PseudoharmonicParams& p);

FormParameters pseudoharmonic_form_d1(int n, const MassProfile& mass, const PseudoharmonicParams& p);
FormParameters pseudoharmonic_form_d2(int n, int M, const MassProfile& mass,
                                      const PseudoharmonicParams& p);
FormParameters pseudoharmonic_form_d3(int n, int l, const MassProfile& mass,
                                      const PseudoharmonicParams& p);

// Modified Kratzer.
double kratzer_energy_d1(int n, const MassProfile& mass, const KratzerParams& p);
double kratzer_energy_d2(int n, int M, const MassProfile& mass, const KratzerParams& p);
double kratzer_energy_d3(int n, int l, const MassProfile& mass, const KratzerParams& p);

FormParameters kratzer_form_d1(int n, const MassProfile& mass, const KratzerParams& p);
FormParameters kratzer_form_d2(int n, int M, const MassProfile& mass, const KratzerParams& p);
FormParameters kratzer_form_d3(int n, int l, const MassProfile& mass, const KratzerParams& p);

}  // namespace pdem::reduced
