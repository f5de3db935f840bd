#include "pdem/verify.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <thread>

#include "pdem/pct.hpp"
#include "pdem/reduced.hpp"

namespace pdem {

namespace {

std::string short_number(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

nlohmann::json params_json(const CaseInput& in, int n) {
  nlohmann::json j = {{"potential", std::string(to_string(in.kind))},
                      {"m0", in.m0},
                      {"lambda", in.lambda},
                      {"D", in.D},
                      {"l", in.l},
                      {"Ve", in.Ve},
                      {"re", in.re}};
  if (n >= 0) j["n"] = n;
  return j;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
  return out;
}

class CaseChecker {
public:
  CaseChecker(const CaseInput& input, const std::vector<int>& ns, const VerifyOptions& options)
      : input_(input), ns_(ns), opt_(options), c_(validate_params(input)), id_(case_id(input)) {}

  void run() {
    guarded("closed_form", [&] { closed_form_checks(); });
    if (opt_.wavefunctions) guarded("wavefunction", [&] { wavefunction_checks(); });
    if (opt_.numeric) guarded("numeric", [&] { numeric_checks(); });
  }

  std::vector<CheckResult> checks;
  std::vector<ConvergenceRow> rows;

private:
  template <class Fn>
  void guarded(const char* stage, Fn&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      checks.push_back({id_ + "/" + stage, "error", params_json(input_, -1), nan, nan, nan, false,
                        e.what()});
    }
  }

  void add(int n, const std::string& kind, double expected, double actual, double err, bool pass,
           std::string detail = {}) {
    std::string id = id_;
    if (n >= 0) id += "/n=" + std::to_string(n);
    id += "/" + kind;
    checks.push_back({std::move(id), kind, params_json(input_, n), expected, actual, err, pass,
                      std::move(detail)});
  }

  void add_relative(int n, const std::string& kind, double expected, double actual, double tol) {
    const double err = relative_error(expected, actual);
    add(n, kind, expected, actual, err, err <= tol);
  }

  double closed_energy(const Case& c, int n) const {
    if (opt_.perturb_Lambda != 0.0) return analytic_energy(c, n, c.Lambda + opt_.perturb_Lambda);
    return analytic_energy(c, n);
  }

  void closed_form_checks() {
    const auto& tol = opt_.tol;
    const PctMap map = build_map(c_.mass);
    const int D = c_.geom.D();
    const int l = c_.geom.l();

    const double angular = angular_map_residual(map, c_.geom, c_.Lambda);
    add(-1, "pct_angular", 0.0, angular, angular, angular <= tol.angular);

    for (int n : ns_) {
      const double E = analytic_energy(c_, n);
      const auto ref = constant_mass_reference(c_.kind(), n, D, c_.Lambda, c_.Ve(), c_.re());
      add_relative(n, "pct_energy", E, map_energy(map, ref.energy), tol.pct_energy);

      if (c_.mass.lambda() == 0.0)
        add_relative(n, "reduction_lambda0", ref.energy / c_.mass.m0(), E, tol.identity);

      if (D <= 3 && !(D == 1 && l > 1)) {
        double reduced_energy = 0.0;
        if (const auto* ph = std::get_if<PseudoharmonicParams>(&c_.potential)) {
          reduced_energy = D == 1   ? reduced::pseudoharmonic_energy_d1(n, c_.mass, *ph)
                           : D == 2 ? reduced::pseudoharmonic_energy_d2(n, l, c_.mass, *ph)
                                    : reduced::pseudoharmonic_energy_d3(n, l, c_.mass, *ph);
        } else {
          const auto& kp = std::get<KratzerParams>(c_.potential);
          reduced_energy = D == 1   ? reduced::kratzer_energy_d1(n, c_.mass, kp)
                           : D == 2 ? reduced::kratzer_energy_d2(n, l, c_.mass, kp)
                                    : reduced::kratzer_energy_d3(n, l, c_.mass, kp);
        }
        add_relative(n, "reduction_d" + std::to_string(D), E, reduced_energy, tol.identity);
      }

      if (c_.mass.lambda() == 0.0 && l >= 1) {
        CaseInput partner = input_;
        partner.D += 2;
        partner.l -= 1;
        add_relative(n, "degeneracy", E, analytic_energy(validate_params(partner), n),
                     tol.identity);
      }

      // wavefunction: direct closed form against the mapped reference state
      const auto direct = analytic_state(c_, n);
      const auto mapped = map_wavefunction(map, [&ref](double s) { return ref.state(s); });
      // points close to a node carry no ratio information
      const auto radii = log_spaced(0.05, direct.tail_radius, 40);
      std::vector<double> a_values;
      double a_max = 0.0;
      for (double r : radii) {
        a_values.push_back(direct(r));
        a_max = std::max(a_max, std::abs(a_values.back()));
      }
      std::vector<double> ratios;
      for (std::size_t i = 0; i < radii.size(); ++i) {
        if (std::abs(a_values[i]) < 1e-3 * a_max) continue;
        ratios.push_back(a_values[i] / mapped(radii[i]));
      }
      double spread = std::numeric_limits<double>::quiet_NaN();
      if (!ratios.empty()) {
        const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
        spread = (*hi - *lo) / std::abs(ratios.front());
      }
      add(n, "pct_wavefunction", 0.0, spread, spread, spread <= tol.wave_ratio);
    }
  }

  void wavefunction_checks() {
    const auto& tol = opt_.tol;
    std::vector<RadialSolution> states;
    for (int n : ns_) states.push_back(analytic_state(c_, n));

    for (std::size_t i = 0; i < states.size(); ++i) {
      const auto& s = states[i];
      const int n = ns_[i];
      const double norm = overlap(s, s);
      add(n, "norm", 1.0, norm, std::abs(norm - 1.0), std::abs(norm - 1.0) <= tol.norm);

      constexpr int samples = 4000;
      std::vector<double> values;
      values.reserve(samples);
      for (int k = 1; k <= samples; ++k) values.push_back(s(s.tail_radius * k / samples));
      const int nodes = node_count(values);
      add(n, "nodes", n, nodes, std::abs(nodes - n), nodes == n);

      double worst = 0.0;
      for (double r : log_spaced(0.05, s.tail_radius, 40)) {
        const double res = ode_residual(c_, s, r);
        if (std::isfinite(res)) worst = std::max(worst, res);
      }
      add(n, "ode_residual", 0.0, worst, worst, worst <= tol.ode);

      for (std::size_t j = i + 1; j < states.size(); ++j) {
        const double o = overlap(s, states[j]);
        add(n, "orthogonality_n" + std::to_string(ns_[j]), 0.0, o, std::abs(o),
            std::abs(o) <= tol.orthogonality);
      }
    }
  }

  void numeric_checks() {
    const auto& tol = opt_.tol;
    const int k = *std::max_element(ns_.begin(), ns_.end()) + 1;
    const auto V = potential_function(c_);
    SolverOptions solver = opt_.solver;
    solver.strict_order = false;
    const auto spec = solve_bound_states(c_.geom, c_.mass, V, k, solver);

    for (int n : ns_) {
      const auto idx = static_cast<std::size_t>(n);
      const double expected = closed_energy(c_, n);
      const double actual = spec.extrapolated[idx];
      add_relative(n, "numeric", expected, actual, tol.numeric);
      const double p = spec.observed_order[idx];
      add(n, "order", 2.0, p, std::abs(p - 2.0), std::abs(p - 2.0) <= tol.order);
      for (std::size_t level = 0; level < spec.grid_sizes.size(); ++level) {
        rows.push_back({id_ + "/n=" + std::to_string(n), spec.grid_sizes[level],
                        spec.energies[level][idx], actual, p, expected,
                        relative_error(expected, actual)});
      }
    }

    // constant shift on the coarsest grid
    const double shift = 10.0;
    const RadialGrid grid(spec.r_max, spec.grid_sizes.front());
    const auto base = lowest_eigenvalues(discretize(grid, c_.geom, c_.mass, V), k);
    const auto moved = lowest_eigenvalues(
        discretize(grid, c_.geom, c_.mass, [&V, shift](double r) { return V(r) + shift; }), k);
    for (int n : ns_) {
      const auto idx = static_cast<std::size_t>(n);
      const double err = std::abs(moved[idx] - base[idx] - shift) / (std::abs(base[idx]) + shift);
      add(n, "shift", base[idx] + shift, moved[idx], err, err <= tol.shift);
    }

    if (c_.mass.lambda() == 0.0 && c_.geom.l() >= 1) {
      CaseInput partner = input_;
      partner.D += 2;
      partner.l -= 1;
      const Case pc = validate_params(partner);
      const auto pspec = solve_bound_states(pc.geom, pc.mass, potential_function(pc), k, solver);
      for (int n : ns_) {
        const auto idx = static_cast<std::size_t>(n);
        add_relative(n, "degeneracy_numeric", spec.extrapolated[idx], pspec.extrapolated[idx],
                     tol.numeric);
      }
    }
  }

  CaseInput input_;
  std::vector<int> ns_;
  const VerifyOptions& opt_;
  Case c_;
  std::string id_;
};

}  // namespace

std::vector<CaseInput> CaseMatrix::expand() const {
  std::vector<CaseInput> out;
  // identical problems across many cases are reported once, with a count
  struct Seen {
    FieldIssue issue;
    std::string first_case;
    int count;
  };
  std::vector<Seen> seen;
  for (auto kind : kinds)
    for (double m : m0)
      for (double ve : Ve)
        for (double r : re)
          for (double lam : lambda)
            for (int d : D)
              for (int ll : l) {
                CaseInput in{m, lam, d, ll, kind, ve, r};
                auto found = check_params(in);
                if (found.empty()) {
                  out.push_back(in);
                  continue;
                }
                for (auto& issue : found) {
                  auto it = std::find_if(seen.begin(), seen.end(), [&](const Seen& s) {
                    return s.issue.field == issue.field && s.issue.message == issue.message;
                  });
                  if (it == seen.end())
                    seen.push_back({issue, case_id(in), 1});
                  else
                    ++it->count;
                }
              }
  std::vector<FieldIssue> issues;
  for (const auto& s : seen) {
    std::string where = s.first_case;
    if (s.count > 1) where += " and " + std::to_string(s.count - 1) + " more case(s)";
    issues.push_back({s.issue.field, s.issue.message + " [" + where + "]"});
  }
  if (n.empty()) issues.push_back({"n", "range of radial quantum numbers is empty"});
  for (int v : n)
    if (v < 0) issues.push_back({"n", "radial quantum numbers must be non-negative"});
  if (out.empty() && issues.empty()) issues.push_back({"matrix", "no cases to run"});
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return out;
}

bool VerifyReport::all_pass() const { return failures() == 0; }

std::size_t VerifyReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.pass; }));
}

std::string case_id(const CaseInput& in) {
  return std::string(to_string(in.kind)) + "/m0=" + short_number(in.m0) +
         "/Ve=" + short_number(in.Ve) + "/re=" + short_number(in.re) +
         "/lambda=" + short_number(in.lambda) + "/D=" + std::to_string(in.D) +
         "/l=" + std::to_string(in.l);
}

double relative_error(double expected, double actual) {
  const double diff = std::abs(actual - expected);
  if (expected == 0.0) return diff;
  return diff / std::abs(expected);
}

double ode_residual(const Case& c, const RadialSolution& state, double r) {
  const auto d = state.form.derivatives(r);
  const double lambda = c.mass.lambda();
  const double D = c.geom.D();
  const double lD = c.geom.lD();
  const double terms[] = {
      d.second,
      -lambda / r * d.first,
      lambda * (D - 1.0) / (2.0 * r * r) * d.value,
      -lD * (lD + 1.0) / (r * r) * d.value,
      2.0 * c.mass(r) * (state.energy - potential_value(c, r)) * d.value,
  };
  double sum = 0.0;
  double scale = 0.0;
  for (double t : terms) {
    sum += t;
    scale += std::abs(t);
  }
  if (!(scale > 1e-280) || !std::isfinite(scale)) return std::numeric_limits<double>::quiet_NaN();
  return std::abs(sum) / scale;
}

VerifyReport run_verification(const CaseMatrix& matrix, const VerifyOptions& options) {
  const auto cases = matrix.expand();
  std::vector<int> ns = matrix.n;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

  std::vector<CaseChecker> workers;
  workers.reserve(cases.size());
  for (const auto& in : cases) workers.emplace_back(in, ns, options);

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(workers.size())));
  std::atomic<std::size_t> next{0};
  auto drain = [&] {
    for (std::size_t i = next++; i < workers.size(); i = next++) workers[i].run();
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(drain);
  drain();
  for (auto& t : pool) t.join();

  VerifyReport report;
  for (auto& w : workers) {
    std::move(w.checks.begin(), w.checks.end(), std::back_inserter(report.checks));
    std::move(w.rows.begin(), w.rows.end(), std::back_inserter(report.convergence));
  }
  return report;
}

nlohmann::json to_json(const VerifyReport& report) {
  auto number = [](double x) -> nlohmann::json {
    if (std::isfinite(x)) return x;
    return nullptr;
  };
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& c : report.checks) {
    nlohmann::json entry = {{"id", c.id},
                            {"kind", c.kind},
                            {"params", c.params},
                            {"expected", number(c.expected)},
                            {"actual", number(c.actual)},
                            {"rel_err", number(c.rel_err)},
                            {"pass", c.pass}};
    if (!c.detail.empty()) entry["detail"] = c.detail;
    cases.push_back(std::move(entry));
  }
  return {{"cases", std::move(cases)},
          {"summary", {{"checks", report.checks.size()}, {"failures", report.failures()},
                       {"pass", report.all_pass()}}}};
}

}  // namespace pdem
