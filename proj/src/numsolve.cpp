#include "pdem/numsolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "pdem/error.hpp"

namespace pdem {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

double centrifugal_coefficient(const Geometry& geom, const MassProfile& mass) {
  const double lD = geom.lD();
  return lD * (lD + 1.0) - mass.lambda() * (geom.D() - 1) / 2.0;
}

struct GershgorinBounds {
  double lo;
  double hi;
};

GershgorinBounds gershgorin(const DiscreteOperator& op) {
  const std::size_t N = op.diag.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < N; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(op.offdiag[i - 1]);
    if (i + 1 < N) radius += std::abs(op.offdiag[i]);
    lo = std::min(lo, op.diag[i] - radius);
    hi = std::max(hi, op.diag[i] + radius);
  }
  return {lo, hi};
}

// Count of matrix eigenvalues below x (matrix units, not energies).
int matrix_count(const DiscreteOperator& op, double x, double pivmin) {
  const std::size_t N = op.diag.size();
  int count = 0;
  double q = op.diag[0] - x;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < N; ++i) {
    const double e = op.offdiag[i - 1];
    q = (op.diag[i] - x) - e * e / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

double pivot_floor(const DiscreteOperator& op) {
  double emax = 1.0;
  for (double e : op.offdiag) emax = std::max(emax, e * e);
  return std::numeric_limits<double>::min() / eps * emax;
}

// Eigenvalue with zero-based index j in matrix units.
double bisect(const DiscreteOperator& op, int j, double lo, double hi, double pivmin) {
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= 1e-14 * std::max(std::abs(lo), std::abs(hi))) break;
    if (matrix_count(op, mid, pivmin) > j)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> matrix_eigenvalues(const DiscreteOperator& op, int k) {
  const int N = op.grid.size();
  if (k < 1) throw InvalidParameter("number of states must be at least 1");
  if (k > N / 10)
    throw InvalidParameter("requested " + std::to_string(k) + " states from a grid of " +
                           std::to_string(N) + " points; at most N/10 are allowed");
  const auto bounds = gershgorin(op);
  const double pivmin = pivot_floor(op);
  const double pad = eps * std::max(std::abs(bounds.lo), std::abs(bounds.hi)) + pivmin;
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(k));
  double lo = bounds.lo - pad;
  for (int j = 0; j < k; ++j) {
    // tighten the upper bracket before the long bisection
    double hi = bounds.hi + pad;
    const double step_base = std::max(std::abs(lo), 1.0);
    for (double step = step_base; lo + step < hi; step *= 2.0) {
      if (matrix_count(op, lo + step, pivmin) > j) {
        hi = lo + step;
        break;
      }
    }
    const double value = bisect(op, j, lo, hi, pivmin);
    values.push_back(value);
    lo = value;
  }
  return values;
}

// Solve (T - shift) x = rhs with partial pivoting; rhs is overwritten.
void shifted_solve(const DiscreteOperator& op, double shift, std::vector<double>& rhs) {
  const std::size_t N = op.diag.size();
  std::vector<double> d(N), dl(op.offdiag), du(op.offdiag), du2(N, 0.0);
  std::vector<char> swapped(N, 0);
  for (std::size_t i = 0; i < N; ++i) d[i] = op.diag[i] - shift;
  for (std::size_t i = 0; i + 1 < N; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = eps * (std::abs(du[i]) + 1.0);
      const double fact = dl[i] / d[i];
      dl[i] = fact;
      d[i + 1] -= fact * du[i];
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = fact;
      const double temp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = temp - fact * d[i + 1];
      if (i + 2 < N) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du[i + 1];
      }
      swapped[i] = 1;
    }
  }
  if (d[N - 1] == 0.0) d[N - 1] = eps * (std::abs(op.diag[N - 1]) + 1.0);
  for (std::size_t i = 0; i + 1 < N; ++i) {
    if (!swapped[i]) {
      rhs[i + 1] -= dl[i] * rhs[i];
    } else {
      const double temp = rhs[i];
      rhs[i] = rhs[i + 1];
      rhs[i + 1] = temp - dl[i] * rhs[i];
    }
  }
  rhs[N - 1] /= d[N - 1];
  if (N >= 2) rhs[N - 2] = (rhs[N - 2] - du[N - 2] * rhs[N - 1]) / d[N - 2];
  for (std::size_t i = N - 2; i-- > 0;)
    rhs[i] = (rhs[i] - du[i] * rhs[i + 1] - du2[i] * rhs[i + 2]) / d[i];
}

void normalize_vector(std::vector<double>& v, double h) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  const double scale = 1.0 / std::sqrt(sum * h);
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  double sign = 1.0;
  for (double x : v) {
    if (std::abs(x) > 1e-3 * vmax) {
      sign = x > 0.0 ? 1.0 : -1.0;
      break;
    }
  }
  for (double& x : v) x *= sign * scale;
}

std::vector<double> inverse_iteration(const DiscreteOperator& op, double eigenvalue) {
  const std::size_t N = op.diag.size();
  const double h = op.grid.spacing();
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> dist(0.5, 1.5);
  std::vector<double> v(N);
  for (double& x : v) x = dist(rng);
  normalize_vector(v, h);
  const double shift = eigenvalue + 4.0 * eps * std::abs(eigenvalue);
  for (int sweep = 0; sweep < 50; ++sweep) {
    std::vector<double> w = v;
    shifted_solve(op, shift, w);
    for (double x : w)
      if (!std::isfinite(x)) throw ConvergenceFailure("inverse iteration produced non-finite values");
    normalize_vector(w, h);
    double change = 0.0;
    for (std::size_t i = 0; i < N; ++i) change = std::max(change, std::abs(w[i] - v[i]));
    v = std::move(w);
    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, std::abs(x));
    if (change <= 1e-12 * vmax) return v;
  }
  throw ConvergenceFailure("inverse iteration did not converge in 50 sweeps");
}

}  // namespace

RadialGrid::RadialGrid(double r_max, int N) : r_max_(r_max), N_(N) {
  if (!(r_max > 0.0) || !std::isfinite(r_max))
    throw InvalidParameter("r_max must be positive and finite");
  if (N < 100) throw InvalidParameter("grid must have at least 100 interior points");
}

DiscreteOperator discretize(const RadialGrid& grid, const Geometry& geom, const MassProfile& mass,
                            const std::function<double(double)>& potential) {
  const int N = grid.size();
  const double h = grid.spacing();
  const double lambda = mass.lambda();
  const double A = centrifugal_coefficient(geom, mass);
  const double weight = 2.0 * mass.m0();
  auto p = [lambda](double r) { return std::pow(r, -lambda); };

  DiscreteOperator op{grid, std::vector<double>(static_cast<std::size_t>(N)),
                      std::vector<double>(static_cast<std::size_t>(N - 1)), weight};
  for (int i = 0; i < N; ++i) {
    const double r = grid.point(i);
    const double V = potential(r);
    if (!std::isfinite(V))
      throw SingularPotential("potential is not finite at grid point r = " + std::to_string(r));
    const double p_minus = p(r - 0.5 * h);
    const double p_plus = p(r + 0.5 * h);
    op.diag[static_cast<std::size_t>(i)] =
        (p_minus + p_plus) / (h * h) + p(r) * A / (r * r) + weight * V;
    if (i + 1 < N) op.offdiag[static_cast<std::size_t>(i)] = -p_plus / (h * h);
  }
  return op;
}

int sturm_count(const DiscreteOperator& op, double energy) {
  return matrix_count(op, op.weight * energy, pivot_floor(op));
}

std::vector<double> lowest_eigenvalues(const DiscreteOperator& op, int k) {
  auto values = matrix_eigenvalues(op, k);
  for (double& v : values) v /= op.weight;
  return values;
}

std::vector<Eigenpair> lowest_eigenpairs(const DiscreteOperator& op, int k) {
  const auto values = matrix_eigenvalues(op, k);
  std::vector<Eigenpair> pairs;
  pairs.reserve(values.size());
  for (double value : values) pairs.push_back({value / op.weight, inverse_iteration(op, value)});
  return pairs;
}

int node_count(std::span<const double> vector) {
  double vmax = 0.0;
  for (double x : vector) vmax = std::max(vmax, std::abs(x));
  if (vmax == 0.0) return 0;
  const double floor = 1e-12 * vmax;
  int nodes = 0;
  int last_sign = 0;
  for (double x : vector) {
    if (std::abs(x) < floor) continue;
    const int sign = x > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++nodes;
    last_sign = sign;
  }
  return nodes;
}

RefinedSpectrum refine(std::span<const int> schedule, double r_max, const Geometry& geom,
                       const MassProfile& mass, const std::function<double(double)>& potential,
                       int k, bool strict) {
  if (schedule.size() < 3) throw InvalidParameter("refinement needs at least three grids");
  std::vector<double> spacing;
  for (int N : schedule) spacing.push_back(RadialGrid(r_max, N).spacing());
  for (std::size_t i = 1; i < spacing.size(); ++i) {
    const double ratio = spacing[i - 1] / spacing[i];
    if (ratio < 1.9 || ratio > 2.1)
      throw InvalidParameter("each grid must halve the spacing of the previous one");
  }

  RefinedSpectrum out;
  out.r_max = r_max;
  out.grid_sizes.assign(schedule.begin(), schedule.end());
  for (int N : schedule)
    out.energies.push_back(lowest_eigenvalues(discretize(RadialGrid(r_max, N), geom, mass, potential), k));

  const std::size_t L = schedule.size();
  auto extrapolate = [&](std::size_t coarse, std::size_t fine, int j) {
    const double rho = spacing[coarse] / spacing[fine];
    const double Ec = out.energies[coarse][static_cast<std::size_t>(j)];
    const double Ef = out.energies[fine][static_cast<std::size_t>(j)];
    return Ef + (Ef - Ec) / (rho * rho - 1.0);
  };
  for (int j = 0; j < k; ++j) {
    const auto idx = static_cast<std::size_t>(j);
    const double fine = extrapolate(L - 2, L - 1, j);
    const double coarse = extrapolate(L - 3, L - 2, j);
    const double d1 = out.energies[L - 3][idx] - out.energies[L - 2][idx];
    const double d2 = out.energies[L - 2][idx] - out.energies[L - 1][idx];
    const double rho = spacing[L - 2] / spacing[L - 1];
    double order = std::numeric_limits<double>::quiet_NaN();
    if (d2 != 0.0 && d1 / d2 > 0.0) order = std::log(d1 / d2) / std::log(rho);
    out.extrapolated.push_back(fine);
    out.error_estimate.push_back(std::abs(fine - coarse));
    out.observed_order.push_back(order);
  }
  if (strict) {
    for (std::size_t j = 0; j < out.observed_order.size(); ++j) {
      const double p = out.observed_order[j];
      if (!(p >= 1.5))
        throw OrderMismatch("observed convergence order " + std::to_string(p) + " for state " +
                            std::to_string(j) + " is below 1.5");
    }
  }
  return out;
}

double choose_r_max(const Geometry& geom, const MassProfile& mass,
                    const std::function<double(double)>& potential, int k,
                    const DomainOptions& options) {
  const double A = centrifugal_coefficient(geom, mass);
  const int probe = std::max(options.probe_points, 10 * k + 10);
  double box = options.initial_r_max;
  while (box <= options.max_r_max) {
    const auto energies = lowest_eigenvalues(discretize(RadialGrid(box, probe), geom, mass, potential), k);
    const double E = energies.back();
    auto kappa2 = [&](double r) { return A / (r * r) + 2.0 * mass(r) * (potential(r) - E); };

    constexpr int samples = 4000;
    const double dr = box / samples;
    if (kappa2(box) <= 0.0) {
      box *= 2.0;
      continue;
    }
    int i_turn = 0;
    for (int i = samples; i >= 1; --i) {
      if (kappa2(i * dr) <= 0.0) {
        i_turn = i;
        break;
      }
    }
    double action = 0.0;
    double prev = std::sqrt(std::max(kappa2(std::max(i_turn, 1) * dr), 0.0));
    for (int i = std::max(i_turn, 1) + 1; i <= samples; ++i) {
      const double cur = std::sqrt(kappa2(i * dr));
      action += 0.5 * (prev + cur) * dr;
      prev = cur;
      if (action >= options.decay_action) return i * dr;
    }
    box *= 2.0;
  }
  throw ConvergenceFailure("could not find an outer radius with sufficient decay below r_max = " +
                           std::to_string(options.max_r_max));
}

RefinedSpectrum solve_bound_states(const Geometry& geom, const MassProfile& mass,
                                   const std::function<double(double)>& potential, int k,
                                   const SolverOptions& options) {
  const double r_max =
      options.r_max ? *options.r_max : choose_r_max(geom, mass, potential, k, options.domain);
  return refine(options.grid_sizes, r_max, geom, mass, potential, k, options.strict_order);
}

}  // namespace pdem
