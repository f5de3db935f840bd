#include <doctest.h>

#include <cmath>
#include <limits>

#include "pdem/analytic.hpp"
#include "pdem/numsolve.hpp"
#include "support/oracles.hpp"

using namespace pdem;

namespace {

Case make_case(PotentialKind kind, int D, int l, double lambda, double m0 = 1.0, double Ve = 1.0,
               double re = 1.0) {
  return validate_params(CaseInput{m0, lambda, D, l, kind, Ve, re});
}

RefinedSpectrum solve(const Case& c, int k) {
  return solve_bound_states(c.geom, c.mass, potential_function(c), k);
}

}  // namespace

TEST_CASE("grid") {
  const RadialGrid g(10.1, 100);
  CHECK(g.spacing() == doctest::Approx(0.1));
  CHECK(g.r_min() == g.spacing());
  CHECK(g.point(99) == doctest::Approx(10.0));
  CHECK_THROWS_AS(RadialGrid(10.0, 99), InvalidParameter);
  CHECK_THROWS_AS(RadialGrid(0.0, 1000), InvalidParameter);
  CHECK_THROWS_AS(RadialGrid(std::numeric_limits<double>::infinity(), 1000), InvalidParameter);
}

TEST_CASE("constant mass stencil is the textbook one") {
  const RadialGrid grid(5.05, 100);
  const double h = grid.spacing();
  const auto V = [](double r) { return r * r; };
  const auto op = discretize(grid, Geometry(3, 1), MassProfile(1.5, 0.0), V);
  CHECK(op.weight == 3.0);
  for (int i : {0, 17, 99}) {
    const double r = grid.point(i);
    CHECK(op.diag[i] == doctest::Approx(2 / (h * h) + 2 / (r * r) + 3.0 * r * r).epsilon(1e-14));
  }
  for (double o : op.offdiag) CHECK(o == doctest::Approx(-1 / (h * h)).epsilon(1e-14));
}

TEST_CASE("position-dependent mass stencil is symmetric with negative couplings") {
  const RadialGrid grid(6.0, 300);
  const auto op = discretize(grid, Geometry(2, 0), MassProfile(1.0, 2.0), [](double) { return 0.0; });
  const double h = grid.spacing();
  for (int i = 0; i + 1 < grid.size(); ++i) {
    CHECK(op.offdiag[i] < 0.0);
    CHECK(op.offdiag[i] == doctest::Approx(-std::pow(grid.point(i) + h / 2, -2.0) / (h * h)));
  }
}

TEST_CASE("Sturm counts agree with an independent shooting count") {
  struct Setup {
    PotentialKind kind;
    int D, l;
    double lambda;
  };
  for (const Setup s : {Setup{PotentialKind::pseudoharmonic, 3, 0, 0.0},
                        Setup{PotentialKind::pseudoharmonic, 3, 1, 1.0},
                        Setup{PotentialKind::kratzer, 2, 1, 2.0}}) {
    const Case c = make_case(s.kind, s.D, s.l, s.lambda);
    const auto V = potential_function(c);
    const double r_max = choose_r_max(c.geom, c.mass, V, 5);
    const auto op = discretize(RadialGrid(r_max, 8000), c.geom, c.mass, V);
    for (int n = 0; n < 4; ++n) {
      const double mid = 0.5 * (analytic_energy(c, n) + analytic_energy(c, n + 1));
      CHECK(sturm_count(op, mid) == n + 1);
      CHECK(oracle::shooting_count(mid, s.D, s.l, 1.0, s.lambda, V, 1e-4, r_max, 40000) == n + 1);
    }
    CHECK(sturm_count(op, 0.5 * analytic_energy(c, 0)) == 0);
  }
}

TEST_CASE("spot energies by extrapolation") {
  const MassProfile m(1.0, 0.0);
  const auto ph = PseudoharmonicParams::from_eta(1.0, 1.0, m);
  const auto spec = solve_bound_states(Geometry(3, 0), m,
                                       [&](double r) { return pseudoharmonic_potential(r, m, ph); }, 1);
  CHECK(std::abs(spec.extrapolated[0] - std::sqrt(1.25)) <= 1e-8);

  const auto kr = solve(make_case(PotentialKind::kratzer, 3, 0, 0.0), 2);
  CHECK(std::abs(kr.extrapolated[0] - 0.5) <= 1e-7);
  CHECK(std::abs(kr.extrapolated[1] - 7.0 / 9.0) <= 1e-6);
}

TEST_CASE("second-order convergence") {
  const Case c = make_case(PotentialKind::pseudoharmonic, 3, 1, 1.0);
  const int schedule[] = {2000, 4000, 8000};
  const auto V = potential_function(c);
  const auto spec = refine(schedule, choose_r_max(c.geom, c.mass, V, 4), c.geom, c.mass, V, 4);
  REQUIRE(spec.energies.size() == 3);
  for (int n = 0; n < 4; ++n) {
    CHECK(std::abs(spec.observed_order[n] - 2.0) <= 0.2);
    // the extrapolated value beats the finest grid
    const double exact = analytic_energy(c, n);
    CHECK(std::abs(spec.extrapolated[n] - exact) < std::abs(spec.energies[2][n] - exact));
    CHECK(spec.error_estimate[n] >= 0.0);
  }
  const int uneven[] = {2000, 3000, 8000};
  CHECK_THROWS_AS(refine(uneven, 20.0, c.geom, c.mass, V, 2), InvalidParameter);
  const int two[] = {2000, 4000};
  CHECK_THROWS_AS(refine(two, 20.0, c.geom, c.mass, V, 2), InvalidParameter);
}

TEST_CASE("a discontinuous potential breaks the order check") {
  const Geometry g(3, 0);
  const MassProfile m(1.0, 0.0);
  const auto V = [](double r) { return r < 1.0137 ? 0.0 : 5.0 + 0.2 * r * r; };
  const int schedule[] = {1000, 2000, 4000};
  CHECK_THROWS_AS(refine(schedule, 12.0, g, m, V, 2), OrderMismatch);
  CHECK_NOTHROW(refine(schedule, 12.0, g, m, V, 2, false));
}

TEST_CASE("constant shift moves every eigenvalue by the same amount") {
  const Case c = make_case(PotentialKind::kratzer, 3, 1, 1.0);
  const auto V = potential_function(c);
  const auto op = discretize(RadialGrid(30.0, 4000), c.geom, c.mass, V);
  const auto shifted =
      discretize(RadialGrid(30.0, 4000), c.geom, c.mass, [&](double r) { return V(r) + 10.0; });
  const auto a = lowest_eigenvalues(op, 5);
  const auto b = lowest_eigenvalues(shifted, 5);
  for (int n = 0; n < 5; ++n) CHECK(std::abs(b[n] - a[n] - 10.0) <= 1e-10 * (std::abs(a[n]) + 10.0));
}

TEST_CASE("eigenvalues increase and eigenvectors have n nodes") {
  const Case c = make_case(PotentialKind::pseudoharmonic, 4, 2, 2.0);
  const auto V = potential_function(c);
  const RadialGrid grid(choose_r_max(c.geom, c.mass, V, 6), 6000);
  const auto pairs = lowest_eigenpairs(discretize(grid, c.geom, c.mass, V), 6);
  for (int n = 0; n < 6; ++n) {
    if (n > 0) CHECK(pairs[n].energy > pairs[n - 1].energy);
    CHECK(node_count(pairs[n].vector) == n);
    double norm = 0.0;
    for (double v : pairs[n].vector) norm += v * v * grid.spacing();
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
  }
  for (int n = 0; n <= 3; ++n) {
    const auto s = analytic_state(c, n);
    std::vector<double> samples;
    for (int i = 1; i <= 4000; ++i) samples.push_back(s(s.tail_radius * i / 4000));
    CHECK(node_count(samples) == n);
  }
  CHECK_THROWS_AS(lowest_eigenvalues(discretize(RadialGrid(10, 100), c.geom, c.mass, V), 11),
                  InvalidParameter);
}

TEST_CASE("eigenvectors approximate the closed-form states") {
  const Case c = make_case(PotentialKind::kratzer, 3, 0, 1.0);
  const auto V = potential_function(c);
  const RadialGrid grid(choose_r_max(c.geom, c.mass, V, 3), 16000);
  const auto pairs = lowest_eigenpairs(discretize(grid, c.geom, c.mass, V), 3);
  for (int n = 0; n < 3; ++n) {
    const auto s = analytic_state(c, n);
    // sign convention: positive next to the origin, same as the closed form
    double worst = 0.0, peak = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
      const double r = grid.point(i);
      peak = std::max(peak, std::abs(s(r)));
      worst = std::max(worst, std::abs(pairs[n].vector[i] - s(r)));
    }
    CHECK(worst <= 1e-4 * peak);
  }
}

TEST_CASE("mass scale enters through the weight") {
  for (double m0 : {0.5, 2.0}) {
    const Case c = make_case(PotentialKind::kratzer, 3, 1, 0.0, m0, 1.3, 1.2);
    const auto spec = solve(c, 3);
    for (int n = 0; n < 3; ++n)
      CHECK(std::abs(spec.extrapolated[n] - analytic_energy(c, n)) <= 1e-6 * std::abs(analytic_energy(c, n)));
  }
}

TEST_CASE("non-finite potential") {
  const auto V = [](double r) { return r > 2.0 && r < 2.2 ? std::nan("") : 1.0; };
  CHECK_THROWS_AS(discretize(RadialGrid(5.0, 200), Geometry(3, 0), MassProfile(1.0, 0.0), V),
                  SingularPotential);
}

TEST_CASE("node counting ignores round-off") {
  const std::vector<double> v{1.0, 0.5, 1e-15, -1e-14, 2e-15, -0.3, -1.0, 0.2};
  CHECK(node_count(v) == 2);
}
