#include <doctest.h>

#include <cmath>

#include "pdem/analytic.hpp"
#include "pdem/reduced.hpp"
#include "support/oracles.hpp"

using namespace pdem;

namespace {

Case make_case(PotentialKind kind, int D, int l, double lambda, double Ve = 1.0, double re = 1.0,
               double m0 = 1.0) {
  return validate_params(CaseInput{m0, lambda, D, l, kind, Ve, re});
}

constexpr PotentialKind kinds[] = {PotentialKind::pseudoharmonic, PotentialKind::kratzer};

}  // namespace

TEST_CASE("spot energies") {
  const MassProfile m0(1.0, 0.0), m2(1.0, 2.0);
  const Geometry g(3, 0);
  CHECK(pseudoharmonic_energy(0, g, m0, PseudoharmonicParams::from_eta(1.0, 1.0, m0)) ==
        doctest::Approx(std::sqrt(1.25)).epsilon(1e-15));
  CHECK(pseudoharmonic_energy(0, g, m2, PseudoharmonicParams::from_eta(1.0, 1.0, m2)) ==
        doctest::Approx(4.0 * std::sqrt(1.0625)).epsilon(1e-15));
  const auto kp = KratzerParams::make(1.0, 1.0, m0);
  CHECK(kratzer_energy(0, g, m0, kp) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(kratzer_energy(1, g, m0, kp) == doctest::Approx(7.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("Kratzer ground state in three dimensions is r^2 exp(-r)") {
  const auto s = analytic_state(make_case(PotentialKind::kratzer, 3, 0, 0.0), 0);
  const auto f = reduced::parameters_of(s.form);
  CHECK(f.power == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(f.decay == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(f.exponent == 1.0);
  // normalized: N^2 int r^4 e^{-2r} dr = N^2 * 4!/2^5 = 1
  CHECK(s.norm_constant == doctest::Approx(std::sqrt(32.0 / 24.0)).epsilon(1e-12));
  CHECK(s(1.3) == doctest::Approx(s.norm_constant * 1.69 * std::exp(-1.3)).epsilon(1e-14));
}

TEST_CASE("pseudoharmonic ground state shape") {
  const MassProfile m(1.0, 0.0);
  const auto s = pseudoharmonic_state(0, Geometry(3, 0), m, PseudoharmonicParams::from_eta(1.0, 1.0, m));
  const auto f = reduced::parameters_of(s.form);
  const double K = std::sqrt(1.25);
  CHECK(f.power == doctest::Approx(K + 0.5).epsilon(1e-15));
  CHECK(f.decay == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(f.exponent == 2.0);
  CHECK(f.kummer_b == doctest::Approx(K + 1.0).epsilon(1e-15));
}

TEST_CASE("states are normalized, orthogonal and have n nodes") {
  for (auto kind : kinds)
    for (double lambda : {0.0, 1.0, 2.0})
      for (int D : {1, 2, 3, 5})
        for (int l : {0, 2}) {
          const Case c = make_case(kind, D, l, lambda);
          std::vector<RadialSolution> states;
          for (int n = 0; n <= 3; ++n) states.push_back(analytic_state(c, n));
          for (int n = 0; n <= 3; ++n) {
            const auto& s = states[n];
            const double norm = oracle::panel_integral([&](double r) { return s(r) * s(r); },
                                                       s.tail_radius);
            CHECK(std::abs(norm - 1.0) <= 1e-8);

            std::vector<double> values;
            for (int k = 1; k <= 3000; ++k) values.push_back(s(s.tail_radius * k / 3000));
            int nodes = 0;
            for (std::size_t k = 1; k < values.size(); ++k)
              nodes += (values[k - 1] > 0) != (values[k] > 0) && values[k] != 0.0;
            CHECK(nodes == n);

            for (int m = n + 1; m <= 3; ++m) {
              const auto& t = states[m];
              const double o = oracle::panel_integral([&](double r) { return s(r) * t(r); },
                                                      std::max(s.tail_radius, t.tail_radius));
              CHECK(std::abs(o) <= 1e-8);
            }
          }
        }
}

TEST_CASE("states satisfy the radial equation") {
  for (auto kind : kinds)
    for (double lambda : {0.0, 1.0, 2.0})
      for (int D : {1, 2, 3, 4})
        for (int l : {0, 1}) {
          const Case c = make_case(kind, D, l, lambda, 1.3, 0.9);
          for (int n = 0; n <= 3; ++n) {
            const auto s = analytic_state(c, n);
            double worst = 0.0;
            for (double r : oracle::log_grid(0.05, 0.8 * s.tail_radius, 30)) {
              if (std::abs(s(r)) < 1e-250) continue;
              const double h = 5e-3 * std::min(r, 1.0);
              worst = std::max(worst, oracle::ode_residual([&](double x) { return s(x); }, r, h, D,
                                                           l, 1.0, lambda, s.energy,
                                                           potential_value(c, r)));
            }
            CHECK(worst <= 1e-7);
          }
        }
}

TEST_CASE("closed-form derivatives") {
  const Case c = make_case(PotentialKind::kratzer, 3, 1, 1.0);
  const auto s = analytic_state(c, 3);
  for (double r : {0.2, 0.9, 2.5, 6.0}) {
    const auto d = s.form.derivatives(r);
    const auto fd = oracle::central_differences([&](double x) { return s(x); }, r, 1e-3);
    CHECK(d.value == doctest::Approx(s(r)).epsilon(1e-13));
    CHECK(d.first == doctest::Approx(fd.d1).epsilon(1e-7));
    CHECK(d.second == doctest::Approx(fd.d2).epsilon(1e-6));
  }
  CHECK_THROWS_AS(s.form.derivatives(0.0), DomainError);
}

TEST_CASE("reference normalization constants") {
  for (int n = 0; n <= 6; ++n)
    for (double Lambda : {0.0, 1.0, 2.5})
      for (int D : {2, 3}) {
        const auto ph = constant_mass_reference(PotentialKind::pseudoharmonic, n, D, Lambda, 1.2, 0.8);
        CHECK(ph.analytic_norm == doctest::Approx(ph.state.norm_constant).epsilon(1e-10));
        const auto kr = constant_mass_reference(PotentialKind::kratzer, n, D, Lambda, 1.2, 0.8);
        CHECK(kr.analytic_norm == doctest::Approx(kr.state.norm_constant).epsilon(1e-10));

        // Laguerre form: L_n^{(K)} = Gamma(n+K+1) / (n! Gamma(K+1)) F(-n, K+1; x)
        const double t = D + 2 * Lambda - 2;
        const double K = 0.5 * std::sqrt(t * t + 8 * 1.2 * 0.8 * 0.8);
        const double binom = std::exp(std::lgamma(n + K + 1) - std::lgamma(n + 1) - std::lgamma(K + 1));
        CHECK(pseudoharmonic_laguerre_norm(n, D, Lambda, 1.2, 0.8) * binom ==
              doctest::Approx(ph.analytic_norm).epsilon(1e-12));
      }
}

TEST_CASE("constant mass formulas are the unit-mass reference") {
  for (auto kind : kinds)
    for (int D = 1; D <= 5; ++D)
      for (int l = 0; l <= 2; ++l) {
        const Case c = make_case(kind, D, l, 0.0, 1.7, 1.1);
        for (int n = 0; n <= 3; ++n) {
          const double ref = constant_mass_reference(kind, n, D, c.Lambda, 1.7, 1.1).energy;
          CHECK(analytic_energy(c, n) == doctest::Approx(ref).epsilon(1e-13));
        }
      }
}

TEST_CASE("inter-dimensional degeneracy at constant mass") {
  for (auto kind : kinds)
    for (int D = 1; D <= 6; ++D)
      for (int l = 1; l <= 4; ++l)
        for (int n = 0; n <= 3; ++n) {
          const double a = analytic_energy(make_case(kind, D, l, 0.0), n);
          const double b = analytic_energy(make_case(kind, D + 2, l - 1, 0.0), n);
          CHECK(std::abs(a - b) <= 2e-16 * std::abs(a));
        }
}

TEST_CASE("energies depend on D and Lambda only through D + 2 Lambda") {
  const MassProfile m(1.0, 1.0);
  const auto ph = PseudoharmonicParams::make(1.0, 1.0, m);
  const auto kp = KratzerParams::make(1.0, 1.0, m);
  CHECK(pseudoharmonic_energy(2, 3, 0.7, m, ph) ==
        doctest::Approx(pseudoharmonic_energy(2, 5, -0.3, m, ph)).epsilon(1e-15));
  CHECK(kratzer_energy(2, 3, 0.7, m, kp) ==
        doctest::Approx(kratzer_energy(2, 5, -0.3, m, kp)).epsilon(1e-15));
}

TEST_CASE("potentials") {
  for (double lambda : {0.0, 1.0, 2.0}) {
    const Case ph = make_case(PotentialKind::pseudoharmonic, 3, 0, lambda, 1.3, 1.4);
    const Case kr = make_case(PotentialKind::kratzer, 3, 0, lambda, 1.3, 1.4);
    const double nu = 1.0 + lambda / 2.0;
    // both vanish where r^nu = re
    const double rmin_ph = std::pow(1.4, 1.0 / nu);
    CHECK(std::abs(potential_value(ph, rmin_ph)) <= 1e-14);
    CHECK(std::abs(potential_value(kr, rmin_ph)) <= 1e-14);
    CHECK(potential_value(ph, 0.5) > 0.0);
    CHECK(potential_value(kr, 3.0) > 0.0);
    // Kratzer tends to P at infinity
    CHECK(potential_value(kr, 1e8) ==
          doctest::Approx(std::get<KratzerParams>(kr.potential).P).epsilon(1e-6));
    CHECK_THROWS_AS(potential_value(ph, 0.0), DomainError);
    CHECK_THROWS_AS(potential_value(kr, -1.0), DomainError);
  }
}

TEST_CASE("invalid quantum numbers") {
  const Case c = make_case(PotentialKind::kratzer, 3, 0, 0.0);
  CHECK_THROWS_AS(analytic_energy(c, -1), InvalidParameter);
  CHECK_THROWS_AS(analytic_state(c, -2), InvalidParameter);
}
