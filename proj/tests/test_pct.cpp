#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "pdem/analytic.hpp"
#include "pdem/pct.hpp"
#include "support/oracles.hpp"

using namespace pdem;

namespace {

Case make_case(PotentialKind kind, int D, int l, double lambda, double m0 = 1.0, double Ve = 1.0,
               double re = 1.0) {
  return validate_params(CaseInput{m0, lambda, D, l, kind, Ve, re});
}

constexpr PotentialKind kinds[] = {PotentialKind::pseudoharmonic, PotentialKind::kratzer};

}  // namespace

TEST_CASE("map basics") {
  const PctMap map = build_map(MassProfile(2.0, 1.0));
  CHECK(map.nu() == 1.5);
  CHECK(map.energy_scale() == doctest::Approx(2.25 / 2.0).epsilon(1e-15));
  for (double r : {0.3, 1.0, 4.2}) {
    CHECK(map.q(r) == doctest::Approx(std::pow(r, 1.5)).epsilon(1e-15));
    CHECK(map.dq(r) == doctest::Approx(1.5 * std::sqrt(r)).epsilon(1e-15));
    // g^2 = q'/m
    CHECK(map.g(r) * map.g(r) == doctest::Approx(map.dq(r) / map.mass()(r)).epsilon(1e-14));
    const auto fd = oracle::central_differences([&](double x) { return map.dq(x); }, r, 1e-3);
    CHECK(map.d2q(r) == doctest::Approx(fd.d1).epsilon(1e-9));
    CHECK(map.d3q(r) == doctest::Approx(fd.d2).epsilon(1e-6));
  }
  CHECK(map_energy(map, 4.0) == doctest::Approx(4.5).epsilon(1e-15));
}

TEST_CASE("mapped reference energies equal the direct formulas") {
  for (auto kind : kinds)
    for (double lambda : {0.0, 0.5, 1.0, 2.0, 3.0})
      for (double m0 : {1.0, 0.6, 2.2})
        for (int D = 1; D <= 5; ++D)
          for (int l = 0; l <= 2; ++l) {
            const Case c = make_case(kind, D, l, lambda, m0, 1.4, 0.9);
            const PctMap map = build_map(c.mass);
            for (int n = 0; n <= 3; ++n) {
              const auto ref = constant_mass_reference(kind, n, D, c.Lambda, 1.4, 0.9);
              CHECK(map_energy(map, ref.energy) ==
                    doctest::Approx(analytic_energy(c, n)).epsilon(1e-12));
            }
          }
}

TEST_CASE("mapped reference potential equals the direct potential") {
  for (auto kind : kinds)
    for (double lambda : {0.0, 1.0, 2.0})
      for (double m0 : {1.0, 1.7}) {
        const Case c = make_case(kind, 3, 0, lambda, m0, 1.2, 1.1);
        const PctMap map = build_map(c.mass);
        const auto mapped =
            map_potential(map, [kind](double s) { return reference_potential(kind, s, 1.2, 1.1); });
        for (double r : {0.2, 0.7, 1.0, 1.9, 5.0})
          CHECK(mapped(r) == doctest::Approx(potential_value(c, r)).epsilon(1e-13));
      }
}

TEST_CASE("mapped reference states are proportional to the direct states") {
  for (auto kind : kinds)
    for (double lambda : {0.0, 1.0, 2.0})
      for (int D : {1, 3, 4})
        for (int l : {0, 1, 2}) {
          const Case c = make_case(kind, D, l, lambda);
          const PctMap map = build_map(c.mass);
          for (int n = 0; n <= 3; ++n) {
            const auto ref = constant_mass_reference(kind, n, D, c.Lambda, 1.0, 1.0);
            const auto direct = analytic_state(c, n);
            const auto mapped = map_wavefunction(map, [&](double s) { return ref.state(s); });
            std::vector<double> ratios;
            double peak = 0.0;
            const auto radii = oracle::log_grid(0.05, 0.7 * direct.tail_radius, 50);
            for (double r : radii) peak = std::max(peak, std::abs(direct(r)));
            for (double r : radii)
              if (std::abs(direct(r)) > 1e-3 * peak) ratios.push_back(direct(r) / mapped(r));
            REQUIRE(ratios.size() > 10);
            const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
            CHECK((*hi - *lo) / std::abs(ratios.front()) <= 1e-10);
          }
        }
}

TEST_CASE("angular matching condition") {
  for (double lambda : {-1.0, 0.0, 0.5, 1.0, 2.0, 4.0})
    for (double m0 : {1.0, 3.0})
      for (int D = 1; D <= 6; ++D)
        for (int l = 0; l <= 3; ++l) {
          const MassProfile m(m0, lambda);
          const Geometry g(D, l);
          const PctMap map = build_map(m);
          const double Lambda = effective_angular_momentum(g, m);
          CHECK(angular_map_residual(map, g, Lambda) <= 1e-10);
          // a wrong Lambda must show up unless the q'/q term is absent
          CHECK(angular_map_residual(map, g, Lambda + 1e-3) > 1e-6);
        }
}

TEST_CASE("angular condition with numerical derivatives") {
  const MassProfile m(1.0, 2.0);
  const Geometry g(3, 1);
  const double Lambda = effective_angular_momentum(g, m);
  const auto radii = oracle::log_grid(0.3, 5.0, 12);
  const RealFunction mass = [](double r) { return r * r; };
  const RealFunction q = [](double r) { return r * r; };
  CHECK(angular_map_residual_numeric(mass, q, g, Lambda, radii) <= 1e-5);
  // q = r^3 is not the map for this mass
  const RealFunction wrong = [](double r) { return r * r * r; };
  CHECK(angular_map_residual_numeric(mass, wrong, g, Lambda, radii) > 1e-2);
}

TEST_CASE("transformation condition") {
  for (double lambda : {0.0, 1.0, 2.5}) {
    const PctMap map = build_map(MassProfile(1.3, lambda));
    CHECK(transformation_condition_residual(map, oracle::log_grid(0.2, 8.0, 15)) <= 1e-7);
  }
  CHECK(default_residual_radii().size() == 20);
  CHECK(default_residual_radii().front() == doctest::Approx(0.1));
  CHECK(default_residual_radii().back() == doctest::Approx(10.0));
}
