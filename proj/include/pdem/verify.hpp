#pragma once

// Cross-checks between the closed forms, their dimension-specific reductions,
// the canonical map and the finite-difference solver, run over a parameter matrix.

#include <string>
#include <vector>

#include <json.hpp>

#include "pdem/analytic.hpp"
#include "pdem/numsolve.hpp"

namespace pdem {

/// Default tolerances for every check. All are relative unless noted.
struct Tolerances {
  /// extrapolated finite-difference energy vs closed form
  double numeric = 1e-6;
  /// algebraic identities: reductions, reference problem, analytic degeneracy
  double identity = 1e-13;
  /// mapped reference energy vs direct formula
  double pct_energy = 1e-12;
  /// spread of R_direct / R_mapped over the sample radii
  double wave_ratio = 1e-10;
  /// angular-momentum matching condition (absolute)
  double angular = 1e-10;
  /// |int R^2 dr - 1| (absolute)
  double norm = 1e-8;
  /// radial equation residual divided by the sum of term magnitudes
  double ode = 1e-7;
  /// |int R_n R_m dr| for n != m (absolute)
  double orthogonality = 1e-8;
  /// accepted band around the expected convergence order 2
  double order = 0.2;
  /// eigenvalue shift under V -> V + c, relative to |E| + |c|
  double shift = 1e-10;
};

/// Cartesian product of parameter lists; every expanded case is validated.
struct CaseMatrix {
  std::vector<PotentialKind> kinds{PotentialKind::pseudoharmonic, PotentialKind::kratzer};
  std::vector<int> D{1, 2, 3, 4, 5};
  std::vector<double> lambda{0.0, 1.0, 2.0};
  std::vector<int> l{0, 1, 2};
  std::vector<int> n{0, 1, 2, 3};
  std::vector<double> m0{1.0};
  std::vector<double> Ve{1.0};
  std::vector<double> re{1.0};

  /// One CaseInput per (kind, m0, Ve, re, lambda, D, l), in that nesting order.
  std::vector<CaseInput> expand() const;
};

struct VerifyOptions {
  Tolerances tol{};
  SolverOptions solver{};
  /// Added to Lambda inside the closed-form energies (fault injection).
  double perturb_Lambda = 0.0;
  bool numeric = true;
  bool wavefunctions = true;
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct CheckResult {
  std::string id;
  std::string kind;
  nlohmann::json params;
  double expected;
  double actual;
  double rel_err;
  bool pass;
  std::string detail;
};

struct ConvergenceRow {
  std::string case_id;
  int N;
  double energy;
  double extrapolated;
  double observed_order;
  double analytic;
  double rel_err;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::vector<ConvergenceRow> convergence;

  bool all_pass() const;
  std::size_t failures() const;
};

/// Stable identifier such as "kratzer/m0=1/Ve=1/re=1/lambda=2/D=3/l=1".
std::string case_id(const CaseInput& input);

double relative_error(double expected, double actual);

/// Scaled residual of the radial equation at r for a closed-form state:
/// |R'' - (lambda/r)(R' - (D-1)/(2r) R) - l_D(l_D+1)/r^2 R + 2m(E-V)R| / sum of |terms|.
double ode_residual(const Case& c, const RadialSolution& state, double r);

/// Runs every check on the matrix. Independent cases are processed in parallel;
/// results come back in matrix order regardless of thread timing.
VerifyReport run_verification(const CaseMatrix& matrix, const VerifyOptions& options);

nlohmann::json to_json(const VerifyReport& report);

}  // namespace pdem
