#pragma once

// Finite-difference eigensolver for the effective-mass radial equation. It uses
// only the potential and mass profile, never the closed-form solutions, so it
// serves as an independent oracle for them.
//
// With m(r) = m0 r^lambda the radial equation multiplied by p(r) = r^{-lambda} is
//
//   -(p R')' + p [l_D(l_D+1) - lambda(D-1)/2] / r^2 R + 2 m0 V R = 2 m0 E R,
//
// a Sturm-Liouville problem with constant weight 2 m0. The standard three-point
// stencil with p evaluated at half-points gives a symmetric tridiagonal matrix
// whose off-diagonals are all negative, so eigenvalues are simple and can be
// isolated by Sturm-sequence bisection.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pdem/model.hpp"

namespace pdem {

/// Uniform grid on (0, r_max) with Dirichlet nodes at r = 0 and r = r_max.
/// Interior points are r_i = i * spacing, i = 1..N, so the first point (r_min)
/// equals the spacing and no coefficient is ever evaluated at the origin.
class RadialGrid {
public:
  /// Throws InvalidParameter unless r_max > 0 and N >= 100.
  RadialGrid(double r_max, int N);

  double r_max() const noexcept { return r_max_; }
  int size() const noexcept { return N_; }
  double spacing() const noexcept { return r_max_ / (N_ + 1); }
  double r_min() const noexcept { return spacing(); }
  /// Zero-based: point(0) == r_min().
  double point(int i) const noexcept { return (i + 1) * spacing(); }

private:
  double r_max_;
  int N_;
};

struct DiscreteOperator {
  RadialGrid grid;
  std::vector<double> diag;
  /// offdiag[i] couples points i and i+1; strictly negative.
  std::vector<double> offdiag;
  /// Eigenvalues of the matrix are weight * E.
  double weight;
};

/// Throws SingularPotential if V is not finite at a grid point.
DiscreteOperator discretize(const RadialGrid& grid, const Geometry& geom, const MassProfile& mass,
                            const std::function<double(double)>& potential);

/// Number of energies of `op` strictly below `energy`.
int sturm_count(const DiscreteOperator& op, double energy);

/// k smallest energies by bisection, each to relative tolerance 1e-14.
/// Throws InvalidParameter if k > N/10.
std::vector<double> lowest_eigenvalues(const DiscreteOperator& op, int k);

struct Eigenpair {
  double energy;
  /// Normalized so that sum_i v_i^2 * spacing = 1, positive next to the origin.
  std::vector<double> vector;
};

/// Eigenvalues as above, eigenvectors by inverse iteration.
/// Throws ConvergenceFailure if inverse iteration needs more than 50 sweeps.
std::vector<Eigenpair> lowest_eigenpairs(const DiscreteOperator& op, int k);

/// Strict sign changes between consecutive entries, ignoring entries smaller
/// than 1e-12 of the largest magnitude.
int node_count(std::span<const double> vector);

struct RefinedSpectrum {
  double r_max;
  std::vector<int> grid_sizes;
  /// energies[level][state]
  std::vector<std::vector<double>> energies;
  std::vector<double> extrapolated;
  /// |extrapolation from the two finest grids - extrapolation from the two coarsest|
  std::vector<double> error_estimate;
  std::vector<double> observed_order;
};

/// Richardson extrapolation assuming an h^2 leading error. `schedule` lists the
/// interior point counts of at least three grids, each roughly twice as fine as
/// the previous one. With `strict`, throws OrderMismatch when any observed order
/// is below 1.5.
RefinedSpectrum refine(std::span<const int> schedule, double r_max, const Geometry& geom,
                       const MassProfile& mass, const std::function<double(double)>& potential,
                       int k, bool strict = true);

struct DomainOptions {
  /// Starting box; doubled until the WKB criterion can be met inside it.
  double initial_r_max = 8.0;
  /// Required decay action int kappa dr beyond the outer turning point of the
  /// highest requested state (amplitude falls by exp(-action)).
  double decay_action = 40.0;
  int probe_points = 2000;
  double max_r_max = 1e5;
};

/// Outer domain radius: solve coarsely for the k lowest energies, find the
/// outer classical turning point of the highest one and go out until the WKB
/// decay action int sqrt(A/r^2 + 2 m(r)(V - E)) dr reaches `decay_action`.
double choose_r_max(const Geometry& geom, const MassProfile& mass,
                    const std::function<double(double)>& potential, int k,
                    const DomainOptions& options = {});

struct SolverOptions {
  std::vector<int> grid_sizes{4000, 8000, 16000};
  DomainOptions domain{};
  /// Fixed outer radius; chosen automatically when empty.
  std::optional<double> r_max{};
  bool strict_order = true;
};

/// choose_r_max followed by refine.
RefinedSpectrum solve_bound_states(const Geometry& geom, const MassProfile& mass,
                                   const std::function<double(double)>& potential, int k,
                                   const SolverOptions& options = {});

}  // namespace pdem
