// pdem: spectra, wavefunctions and verification runs for the power-law
// effective-mass pseudoharmonic and Kratzer problems.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error,
// 3 numerical failure.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdem/analytic.hpp"
#include "pdem/io.hpp"
#include "pdem/numsolve.hpp"
#include "pdem/verify.hpp"

namespace {

using namespace pdem;
using nlohmann::json;

enum ExitCode { ok = 0, verification_failed = 1, config_error = 2, numerical_failure = 3 };

struct CommonFlags {
  std::string config;
  std::string out;
  bool json = false;
  std::vector<int> grid_N;
  std::optional<double> tol;
  std::optional<double> r_max;
  unsigned threads = 0;
  // overrides applied on top of the config
  std::vector<std::string> potential;
  std::vector<double> m0, lambda, Ve, re;
  std::vector<int> D, l;
  std::optional<std::string> n;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "JSON configuration file");
  cmd->add_option("--out", f.out, "write output here instead of stdout");
  cmd->add_flag("--json", f.json, "emit JSON instead of CSV/text");
  cmd->add_option("--potential", f.potential, "pseudoharmonic and/or kratzer")->delimiter(',');
  cmd->add_option("--m0", f.m0, "rest mass m0")->delimiter(',');
  cmd->add_option("--lambda", f.lambda, "mass exponent lambda")->delimiter(',');
  cmd->add_option("--Ve", f.Ve, "dissociation energy")->delimiter(',');
  cmd->add_option("--re", f.re, "equilibrium distance")->delimiter(',');
  cmd->add_option("-D,--dim", f.D, "spatial dimension(s)")->delimiter(',');
  cmd->add_option("--l", f.l, "angular quantum number(s)")->delimiter(',');
  cmd->add_option("--n", f.n, "radial quantum numbers: a list such as 0,1,2 or a range 0:3");
}

void add_solver(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--grid-N", f.grid_N, "interior points of the refinement grids, coarse to fine")
      ->delimiter(',');
  cmd->add_option("--tol", f.tol, "relative tolerance for numeric vs closed-form energies");
  cmd->add_option("--r-max", f.r_max, "outer radius of the finite-difference box");
  cmd->add_option("--threads", f.threads, "worker threads (0 = all cores)");
}

std::vector<int> parse_n_range(const std::string& text) {
  auto parse_int = [](const std::string& token) {
    int value = 0;
    const auto* end = token.data() + token.size();
    const auto res = std::from_chars(token.data(), end, value);
    if (token.empty() || res.ec != std::errc{} || res.ptr != end)
      throw ValidationError("--n", "'" + token + "' is not an integer");
    return value;
  };
  if (text.empty()) throw ValidationError("--n", "range is empty");
  std::vector<int> out;
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    const int lo = parse_int(text.substr(0, colon));
    const int hi = parse_int(text.substr(colon + 1));
    for (int i = lo; i <= hi; ++i) out.push_back(i);
  } else {
    std::stringstream ss(text);
    for (std::string token; std::getline(ss, token, ',');) out.push_back(parse_int(token));
  }
  if (out.empty()) throw ValidationError("--n", "range is empty");
  return out;
}

CaseSpec resolve(const CommonFlags& f) {
  CaseSpec spec = f.config.empty() ? CaseSpec{} : load_case_spec(f.config);
  auto& m = spec.matrix;
  std::vector<FieldIssue> issues;
  if (!f.potential.empty()) {
    m.kinds.clear();
    for (const auto& p : f.potential) {
      try {
        m.kinds.push_back(parse_potential_kind(p));
      } catch (const InvalidParameter& e) {
        issues.push_back({"--potential", e.what()});
      }
    }
  }
  if (!f.m0.empty()) m.m0 = f.m0;
  if (!f.lambda.empty()) m.lambda = f.lambda;
  if (!f.Ve.empty()) m.Ve = f.Ve;
  if (!f.re.empty()) m.re = f.re;
  if (!f.D.empty()) m.D = f.D;
  if (!f.l.empty()) m.l = f.l;
  if (f.n) {
    try {
      m.n = parse_n_range(*f.n);
    } catch (const ValidationError& e) {
      issues.insert(issues.end(), e.issues().begin(), e.issues().end());
    }
  }
  if (!f.grid_N.empty()) {
    if (f.grid_N.size() < 3) issues.push_back({"--grid-N", "needs at least three grid sizes"});
    spec.solver.grid_sizes = f.grid_N;
  }
  if (f.tol) {
    if (!(*f.tol > 0.0)) issues.push_back({"--tol", "must be positive"});
    spec.tolerances.numeric = *f.tol;
  }
  if (f.r_max) {
    if (!(*f.r_max > 0.0)) issues.push_back({"--r-max", "must be positive"});
    spec.solver.r_max = *f.r_max;
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return spec;
}

class Output {
public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ValidationError("--out", "cannot open " + path + " for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
  std::ofstream file_;
};

// -- spectrum ----------------------------------------------------------------

int cmd_spectrum(const CommonFlags& f) {
  const CaseSpec spec = resolve(f);
  const auto cases = spec.matrix.expand();
  const std::vector<std::string> header = {"D",  "l",  "lambda", "n",      "potential",
                                           "m0", "Ve", "re",     "Lambda", "energy_analytic"};
  std::vector<std::vector<std::string>> rows;
  json out = json::array();
  for (const auto& in : cases) {
    const Case c = validate_params(in);
    for (int n : spec.matrix.n) {
      const double E = analytic_energy(c, n);
      rows.push_back({std::to_string(in.D), std::to_string(in.l), format_number(in.lambda),
                      std::to_string(n), std::string(to_string(in.kind)), format_number(in.m0),
                      format_number(in.Ve), format_number(in.re), format_number(c.Lambda),
                      format_number(E)});
      out.push_back({{"D", in.D}, {"l", in.l}, {"lambda", in.lambda}, {"n", n},
                     {"potential", std::string(to_string(in.kind))}, {"m0", in.m0},
                     {"Ve", in.Ve}, {"re", in.re}, {"Lambda", c.Lambda}, {"energy_analytic", E}});
    }
  }
  Output sink(f.out);
  if (f.json)
    sink.stream() << out.dump(2) << '\n';
  else
    write_csv(sink.stream(), header, rows);
  return ok;
}

// -- wavefunction ------------------------------------------------------------

struct WaveFlags {
  int points = 2000;
};

int cmd_wavefunction(const CommonFlags& f, const WaveFlags& w) {
  const CaseSpec spec = resolve(f);
  const auto cases = spec.matrix.expand();
  if (cases.size() != 1 || spec.matrix.n.size() != 1)
    throw ValidationError("state", "wavefunction needs exactly one (potential, D, l, lambda, n); got " +
                                         std::to_string(cases.size()) + " case(s) and " +
                                         std::to_string(spec.matrix.n.size()) + " n value(s)");
  if (w.points < 10) throw ValidationError("--points", "must be at least 10");
  const Case c = validate_params(cases.front());
  const int n = spec.matrix.n.front();
  const RadialSolution state = analytic_state(c, n);
  const double r_max = spec.solver.r_max.value_or(state.tail_radius);
  const double dr = r_max / w.points;

  std::vector<double> r(static_cast<std::size_t>(w.points)), R(r.size());
  double sum = 0.0;
  for (int i = 0; i < w.points; ++i) {
    r[static_cast<std::size_t>(i)] = (i + 1) * dr;
    R[static_cast<std::size_t>(i)] = state(r[static_cast<std::size_t>(i)]);
    sum += R[static_cast<std::size_t>(i)] * R[static_cast<std::size_t>(i)] * dr;
  }

  Output sink(f.out);
  auto& os = sink.stream();
  if (f.json) {
    json j = {{"params", to_json(cases.front())}, {"n", n}, {"energy", state.energy},
              {"norm_constant", state.norm_constant}, {"riemann_sum", sum},
              {"r", r}, {"R", R}};
    os << j.dump(2) << '\n';
    return ok;
  }
  os << "# " << case_id(cases.front()) << "/n=" << n << '\n';
  os << "# energy=" << format_number(state.energy) << '\n';
  os << "# norm_constant=" << format_number(state.norm_constant) << '\n';
  os << "# sampling: " << w.points << " uniform points on (0, " << format_number(r_max)
     << "]; coarse samples of an exactly normalized state, sum R^2 dr = " << format_number(sum)
     << '\n';
  os << "r,R\n";
  for (std::size_t i = 0; i < r.size(); ++i)
    os << format_number(r[i]) << ',' << format_number(R[i]) << '\n';
  return ok;
}

// -- verify ------------------------------------------------------------------

struct VerifyFlags {
  double perturb_Lambda = 0.0;
  std::string convergence;
  bool skip_numeric = false;
  bool skip_wavefunctions = false;
};

int cmd_verify(const CommonFlags& f, const VerifyFlags& v) {
  const CaseSpec spec = resolve(f);
  VerifyOptions options;
  options.tol = spec.tolerances;
  options.solver = spec.solver;
  options.perturb_Lambda = v.perturb_Lambda;
  options.numeric = !v.skip_numeric;
  options.wavefunctions = !v.skip_wavefunctions;
  options.threads = f.threads;
  const VerifyReport report = run_verification(spec.matrix, options);

  if (!v.convergence.empty()) {
    std::ofstream conv(v.convergence);
    if (!conv) throw ValidationError("--convergence", "cannot open " + v.convergence);
    write_convergence_csv(conv, report.convergence);
  }

  Output sink(f.out);
  auto& os = sink.stream();
  if (f.json) {
    os << to_json(report).dump(2) << '\n';
  } else {
    // one line per case, failing checks listed beneath it
    std::vector<std::string> order;
    std::map<std::string, std::vector<const CheckResult*>> by_case;
    for (const auto& c : report.checks) {
      const std::string id = case_id(CaseInput{c.params.at("m0").get<double>(),
                                               c.params.at("lambda").get<double>(),
                                               c.params.at("D").get<int>(),
                                               c.params.at("l").get<int>(),
                                               parse_potential_kind(c.params.at("potential").get<std::string>()),
                                               c.params.at("Ve").get<double>(),
                                               c.params.at("re").get<double>()});
      if (!by_case.count(id)) order.push_back(id);
      by_case[id].push_back(&c);
    }
    for (const auto& id : order) {
      const auto& checks = by_case[id];
      std::size_t failed = 0;
      for (const auto* c : checks) failed += c->pass ? 0 : 1;
      os << (failed ? "FAIL " : "PASS ") << id << " (" << checks.size() - failed << '/'
         << checks.size() << " checks)\n";
      for (const auto* c : checks) {
        if (c->pass) continue;
        os << "  " << c->id << ": expected=" << format_number(c->expected)
           << " actual=" << format_number(c->actual) << " err=" << format_number(c->rel_err);
        if (!c->detail.empty()) os << " (" << c->detail << ')';
        os << '\n';
      }
    }
    os << (report.all_pass() ? "PASS" : "FAIL") << ": " << report.checks.size() - report.failures()
       << '/' << report.checks.size() << " checks passed\n";
  }
  return report.all_pass() ? ok : verification_failed;
}

// -- degeneracy --------------------------------------------------------------

int cmd_degeneracy(const CommonFlags& f, bool numeric) {
  const CaseSpec spec = resolve(f);
  const auto cases = spec.matrix.expand();
  const int k = *std::max_element(spec.matrix.n.begin(), spec.matrix.n.end()) + 1;
  std::vector<std::string> header = {"potential", "lambda", "n", "D", "l", "D_partner",
                                     "l_partner", "energy", "energy_partner", "rel_diff",
                                     "degenerate"};
  if (numeric) {
    header.push_back("numeric");
    header.push_back("numeric_partner");
  }
  std::vector<std::vector<std::string>> rows;
  json out = json::array();
  bool all_ok = true;
  SolverOptions solver = spec.solver;
  solver.strict_order = false;
  for (const auto& in : cases) {
    if (in.l < 1) continue;
    CaseInput partner = in;
    partner.D += 2;
    partner.l -= 1;
    const Case a = validate_params(in);
    const Case b = validate_params(partner);
    std::vector<double> na, nb;
    if (numeric) {
      na = solve_bound_states(a.geom, a.mass, potential_function(a), k, solver).extrapolated;
      nb = solve_bound_states(b.geom, b.mass, potential_function(b), k, solver).extrapolated;
    }
    for (int n : spec.matrix.n) {
      const double Ea = analytic_energy(a, n);
      const double Eb = analytic_energy(b, n);
      const double diff = relative_error(Ea, Eb);
      const bool degenerate = diff <= spec.tolerances.identity;
      // the rule is exact only for constant mass
      if (in.lambda == 0.0 && !degenerate) all_ok = false;
      std::vector<std::string> row = {std::string(to_string(in.kind)), format_number(in.lambda),
                                      std::to_string(n), std::to_string(in.D),
                                      std::to_string(in.l), std::to_string(partner.D),
                                      std::to_string(partner.l), format_number(Ea),
                                      format_number(Eb), format_number(diff),
                                      degenerate ? "true" : "false"};
      json j = {{"potential", std::string(to_string(in.kind))}, {"lambda", in.lambda},
                {"n", n}, {"D", in.D}, {"l", in.l}, {"D_partner", partner.D},
                {"l_partner", partner.l}, {"energy", Ea}, {"energy_partner", Eb},
                {"rel_diff", diff}, {"degenerate", degenerate}};
      if (numeric) {
        const auto idx = static_cast<std::size_t>(n);
        row.push_back(format_number(na[idx]));
        row.push_back(format_number(nb[idx]));
        j["numeric"] = na[idx];
        j["numeric_partner"] = nb[idx];
        if (in.lambda == 0.0 && relative_error(na[idx], nb[idx]) > spec.tolerances.numeric)
          all_ok = false;
      }
      rows.push_back(std::move(row));
      out.push_back(std::move(j));
    }
  }
  Output sink(f.out);
  if (f.json)
    sink.stream() << out.dump(2) << '\n';
  else
    write_csv(sink.stream(), header, rows);
  return all_ok ? ok : verification_failed;
}

void print_issues(const ValidationError& e) {
  std::cerr << "configuration error:\n";
  for (const auto& issue : e.issues()) std::cerr << "  " << issue.field << ": " << issue.message << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bound states of the power-law effective-mass Schroedinger equation"};
  app.require_subcommand(1);

  CommonFlags spectrum_flags, wave_flags, verify_flags, degeneracy_flags;
  WaveFlags wave;
  VerifyFlags verify;
  bool degeneracy_numeric = false;

  auto* spectrum = app.add_subcommand("spectrum", "closed-form energies as CSV");
  add_common(spectrum, spectrum_flags);

  auto* wavefunction = app.add_subcommand("wavefunction", "sample one normalized radial state");
  add_common(wavefunction, wave_flags);
  wavefunction->add_option("--r-max", wave_flags.r_max, "sample (0, r_max]; defaults to the tail radius");
  wavefunction->add_option("--points", wave.points, "number of samples");

  auto* verify_cmd = app.add_subcommand("verify", "run the closed-form and numerical cross-checks");
  add_common(verify_cmd, verify_flags);
  add_solver(verify_cmd, verify_flags);
  verify_cmd->add_option("--perturb-Lambda", verify.perturb_Lambda,
                         "add this to Lambda inside the closed-form energies (fault injection)");
  verify_cmd->add_option("--convergence", verify.convergence, "write the convergence table (CSV) here");
  verify_cmd->add_flag("--skip-numeric", verify.skip_numeric, "closed-form checks only");
  verify_cmd->add_flag("--skip-wavefunctions", verify.skip_wavefunctions,
                       "skip norm, node, residual and orthogonality checks");

  auto* degeneracy = app.add_subcommand("degeneracy", "compare (D, l) with (D+2, l-1)");
  add_common(degeneracy, degeneracy_flags);
  add_solver(degeneracy, degeneracy_flags);
  degeneracy->add_flag("--numeric", degeneracy_numeric, "confirm with the finite-difference solver");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return config_error;
  }

  try {
    if (spectrum->parsed()) return cmd_spectrum(spectrum_flags);
    if (wavefunction->parsed()) return cmd_wavefunction(wave_flags, wave);
    if (verify_cmd->parsed()) return cmd_verify(verify_flags, verify);
    if (degeneracy->parsed()) return cmd_degeneracy(degeneracy_flags, degeneracy_numeric);
  } catch (const ValidationError& e) {
    print_issues(e);
    return config_error;
  } catch (const InvalidParameter& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return config_error;
  } catch (const NegativeRadicand& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return config_error;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return numerical_failure;
  } catch (...) {
    std::cerr << "numerical failure: unknown error\n";
    return numerical_failure;
  }
  return config_error;
}
