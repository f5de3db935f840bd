#pragma once

// Physical inputs and derived constants for the power-law effective-mass problem.
// Everything is in atomic units (hbar = e = 1); the rest mass m0 stays explicit.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pdem/error.hpp"

namespace pdem {

/// m(r) = m0 * r^lambda.
class MassProfile {
public:
  /// Throws InvalidParameter unless m0 > 0 and lambda > -2.
  MassProfile(double m0, double lambda);

  double m0() const noexcept { return m0_; }
  double lambda() const noexcept { return lambda_; }
  /// Exponent of the canonical map q(r) = r^nu, nu = 1 + lambda/2.
  double nu() const noexcept { return 1.0 + 0.5 * lambda_; }

  double operator()(double r) const;
  /// m'(r) / m(r)
  double log_derivative(double r) const noexcept { return lambda_ / r; }

private:
  double m0_;
  double lambda_;
};

/// Spatial dimension and angular quantum number. For D = 2 the quantum number is
/// conventionally called M; it is stored in the same field.
class Geometry {
public:
  /// Throws InvalidParameter unless D >= 1 and l >= 0.
  Geometry(int D, int l);

  int D() const noexcept { return D_; }
  int l() const noexcept { return l_; }
  /// l_D = l + (D-3)/2. For D = 1, l = 0 and l = 1 give l_D = -1 and 0, which
  /// produce the same centrifugal factor l_D(l_D+1) = 0.
  double lD() const noexcept { return l_ + 0.5 * (D_ - 3); }

  friend bool operator==(const Geometry&, const Geometry&) = default;

private:
  int D_;
  int l_;
};

/// Lambda(l) = -(D-2)/2 + sqrt((D+2l-2)^2 + (2+lambda)^2 - 2(2+lambda D)) / (2+lambda).
/// Throws NegativeRadicand when the square-root argument is negative.
double effective_angular_momentum(const Geometry& geom, const MassProfile& mass);

/// Closed form of effective_angular_momentum at lambda = 2:
/// -(D-2)/2 + sqrt((D+2l-2)^2 - 4(D-3)) / 4.
double lambda1_check(const Geometry& geom);

/// Lambda(l) + D/2 - 1, the combination every energy and exponent depends on.
/// Computed directly from the radicand, avoiding the cancellation in Lambda + D/2 - 1.
double shifted_angular_index(const Geometry& geom, const MassProfile& mass);

enum class PotentialKind { pseudoharmonic, kratzer };

std::string_view to_string(PotentialKind kind) noexcept;
/// Accepts "pseudoharmonic" and "kratzer"; throws InvalidParameter otherwise.
PotentialKind parse_potential_kind(std::string_view text);

/// V(s) = Ve (s/re - re/s)^2 with Ve = kappa re^2 / 8.
struct PseudoharmonicParams {
  double Ve;
  double re;
  double kappa;
  /// sqrt(kappa)/2 = sqrt(2 Ve)/re
  double eta;
  /// nu * eta / m0
  double C;

  static PseudoharmonicParams make(double Ve, double re, const MassProfile& mass);
  /// Same bundle specified through eta instead of Ve (Ve = eta^2 re^2 / 2).
  static PseudoharmonicParams from_eta(double eta, double re, const MassProfile& mass);
};

/// V(s) = Ve ((s - re)/s)^2.
struct KratzerParams {
  double Ve;
  double re;
  /// (2+lambda)^2 Ve / (4 m0)
  double P;
  /// 1 / (4 Ve re); infinite when Ve = 0.
  double a;

  /// Ve may be zero here (the energy formula degenerates to E = 0); bundle
  /// validation requires Ve > 0.
  static KratzerParams make(double Ve, double re, const MassProfile& mass);

  /// Pseudo-Coulomb wave number k = 1 / (a (1 + 2n + sqrt((D + 2 Lambda - 2)^2 + 8 Ve re^2))).
  double wave_number(int n, int D, double Lambda) const;
};

using PotentialParams = std::variant<PseudoharmonicParams, KratzerParams>;

PotentialKind kind_of(const PotentialParams& params) noexcept;

/// Raw, unvalidated inputs as they arrive from a config file or the command line.
struct CaseInput {
  double m0 = 1.0;
  double lambda = 0.0;
  int D = 3;
  int l = 0;
  PotentialKind kind = PotentialKind::pseudoharmonic;
  double Ve = 1.0;
  double re = 1.0;
};

/// A validated, immutable parameter bundle with every derived constant populated.
struct Case {
  MassProfile mass;
  Geometry geom;
  PotentialParams potential;
  /// Effective angular momentum Lambda(l).
  double Lambda;

  PotentialKind kind() const noexcept { return kind_of(potential); }
  double Ve() const noexcept;
  double re() const noexcept;
};

/// Every violated invariant of `input`, empty when the input is valid.
std::vector<FieldIssue> check_params(const CaseInput& input);

/// Throws ValidationError listing all violated invariants.
Case validate_params(const CaseInput& input);

CaseInput to_input(const Case& c);

}  // namespace pdem
