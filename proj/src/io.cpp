#include "pdem/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace pdem {

namespace {

using nlohmann::json;

class FieldReader {
public:
  std::vector<FieldIssue> issues;

  // Scalar or non-empty list of numbers.
  template <class T>
  void numbers(const json& obj, const char* key, const std::string& field, std::vector<T>& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    std::vector<T> values;
    auto take = [&](const json& x) {
      if (!x.is_number()) {
        issues.push_back({field, "must be a number or a list of numbers"});
        return false;
      }
      if constexpr (std::is_integral_v<T>) {
        const double d = x.get<double>();
        if (d != std::floor(d)) {
          issues.push_back({field, "must be an integer"});
          return false;
        }
        values.push_back(static_cast<T>(d));
      } else {
        values.push_back(x.get<T>());
      }
      return true;
    };
    if (v.is_array()) {
      for (const auto& x : v)
        if (!take(x)) return;
    } else if (!take(v)) {
      return;
    }
    if (values.empty()) {
      issues.push_back({field, "range is empty"});
      return;
    }
    out = std::move(values);
  }

  void kinds(const json& obj, std::vector<PotentialKind>& out) {
    if (!obj.contains("kind")) return;
    const json& v = obj.at("kind");
    std::vector<PotentialKind> values;
    auto take = [&](const json& x) {
      if (!x.is_string()) {
        issues.push_back({"potential.kind", "must be a string or a list of strings"});
        return false;
      }
      try {
        values.push_back(parse_potential_kind(x.get<std::string>()));
      } catch (const InvalidParameter& e) {
        issues.push_back({"potential.kind", e.what()});
        return false;
      }
      return true;
    };
    if (v.is_array()) {
      for (const auto& x : v)
        if (!take(x)) return;
    } else if (!take(v)) {
      return;
    }
    if (values.empty()) {
      issues.push_back({"potential.kind", "range is empty"});
      return;
    }
    out = std::move(values);
  }

  void n_range(const json& obj, std::vector<int>& out) {
    if (!obj.contains("n")) return;
    const json& v = obj.at("n");
    if (v.is_object()) {
      if (!v.contains("min") || !v.contains("max") || !v.at("min").is_number_integer() ||
          !v.at("max").is_number_integer()) {
        issues.push_back({"n", "range object needs integer \"min\" and \"max\""});
        return;
      }
      const int lo = v.at("min").get<int>();
      const int hi = v.at("max").get<int>();
      if (hi < lo) {
        issues.push_back({"n", "range is empty"});
        return;
      }
      out.clear();
      for (int i = lo; i <= hi; ++i) out.push_back(i);
      return;
    }
    numbers(obj, "n", "n", out);
  }
};

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& prefix,
                    std::vector<FieldIssue>& issues) {
  for (const auto& [key, value] : obj.items()) {
    bool found = false;
    for (const char* k : known) found = found || key == k;
    if (!found) issues.push_back({prefix + key, "unknown field"});
  }
}

}  // namespace

CaseSpec parse_case_spec(const json& config) {
  if (!config.is_object())
    throw ValidationError("config", "top level must be a JSON object");
  CaseSpec spec;
  FieldReader rd;
  reject_unknown(config, {"m0", "lambda", "D", "l", "n", "potential", "solver", "tolerances"}, "",
                 rd.issues);

  auto& m = spec.matrix;
  rd.numbers(config, "m0", "m0", m.m0);
  rd.numbers(config, "lambda", "lambda", m.lambda);
  rd.numbers(config, "D", "D", m.D);
  rd.numbers(config, "l", "l", m.l);
  rd.n_range(config, m.n);

  if (config.contains("potential")) {
    const json& pot = config.at("potential");
    if (!pot.is_object()) {
      rd.issues.push_back({"potential", "must be an object"});
    } else {
      reject_unknown(pot, {"kind", "Ve", "re", "eta"}, "potential.", rd.issues);
      rd.kinds(pot, m.kinds);
      rd.numbers(pot, "re", "potential.re", m.re);
      rd.numbers(pot, "Ve", "potential.Ve", m.Ve);
      if (pot.contains("eta")) {
        if (pot.contains("Ve")) {
          rd.issues.push_back({"potential.eta", "give either Ve or eta, not both"});
        } else if (m.kinds.size() != 1 || m.kinds.front() != PotentialKind::pseudoharmonic) {
          rd.issues.push_back({"potential.eta", "eta applies to the pseudoharmonic family only"});
        } else if (m.re.size() != 1) {
          rd.issues.push_back({"potential.eta", "eta requires a single re"});
        } else {
          std::vector<double> etas;
          rd.numbers(pot, "eta", "potential.eta", etas);
          m.Ve.clear();
          for (double eta : etas) {
            if (!(eta > 0.0)) rd.issues.push_back({"potential.eta", "eta must be positive"});
            m.Ve.push_back(0.5 * eta * eta * m.re.front() * m.re.front());
          }
        }
      }
    }
  }

  if (config.contains("solver")) {
    const json& s = config.at("solver");
    if (!s.is_object()) {
      rd.issues.push_back({"solver", "must be an object"});
    } else {
      reject_unknown(s, {"grid_N", "r_max"}, "solver.", rd.issues);
      rd.numbers(s, "grid_N", "solver.grid_N", spec.solver.grid_sizes);
      if (spec.solver.grid_sizes.size() < 3)
        rd.issues.push_back({"solver.grid_N", "needs at least three grid sizes"});
      for (int N : spec.solver.grid_sizes)
        if (N < 100) rd.issues.push_back({"solver.grid_N", "grid sizes must be >= 100"});
      if (s.contains("r_max") && !s.at("r_max").is_null()) {
        if (!s.at("r_max").is_number() || !(s.at("r_max").get<double>() > 0.0))
          rd.issues.push_back({"solver.r_max", "must be a positive number"});
        else
          spec.solver.r_max = s.at("r_max").get<double>();
      }
    }
  }

  if (config.contains("tolerances")) {
    try {
      spec.tolerances = tolerances_from_json(config.at("tolerances"));
    } catch (const ValidationError& e) {
      rd.issues.insert(rd.issues.end(), e.issues().begin(), e.issues().end());
    }
  }

  if (!rd.issues.empty()) throw ValidationError(std::move(rd.issues));
  return spec;
}

CaseSpec load_case_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config", "cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("config", std::string("malformed JSON: ") + e.what());
  }
  return parse_case_spec(j);
}

json to_json(const CaseInput& in) {
  return {{"m0", in.m0},
          {"lambda", in.lambda},
          {"D", in.D},
          {"l", in.l},
          {"potential", {{"kind", std::string(to_string(in.kind))}, {"Ve", in.Ve}, {"re", in.re}}}};
}

Case case_from_json(const json& j) {
  const CaseSpec spec = parse_case_spec(j);
  const auto& m = spec.matrix;
  if (m.m0.size() != 1 || m.lambda.size() != 1 || m.D.size() != 1 || m.l.size() != 1 ||
      m.kinds.size() != 1 || m.Ve.size() != 1 || m.re.size() != 1)
    throw ValidationError("config", "a single parameter bundle needs scalar fields");
  return validate_params(
      CaseInput{m.m0[0], m.lambda[0], m.D[0], m.l[0], m.kinds[0], m.Ve[0], m.re[0]});
}

json to_json(const Tolerances& t) {
  return {{"numeric", t.numeric},     {"identity", t.identity},
          {"pct_energy", t.pct_energy}, {"wave_ratio", t.wave_ratio},
          {"angular", t.angular},     {"norm", t.norm},
          {"ode", t.ode},             {"orthogonality", t.orthogonality},
          {"order", t.order},         {"shift", t.shift}};
}

Tolerances tolerances_from_json(const json& j, const Tolerances& defaults) {
  if (!j.is_object()) throw ValidationError("tolerances", "must be an object");
  Tolerances t = defaults;
  std::vector<FieldIssue> issues;
  const std::pair<const char*, double*> fields[] = {
      {"numeric", &t.numeric}, {"identity", &t.identity},       {"pct_energy", &t.pct_energy},
      {"wave_ratio", &t.wave_ratio}, {"angular", &t.angular},   {"norm", &t.norm},
      {"ode", &t.ode},         {"orthogonality", &t.orthogonality}, {"order", &t.order},
      {"shift", &t.shift}};
  for (const auto& [key, value] : j.items()) {
    double* target = nullptr;
    for (const auto& [name, ptr] : fields)
      if (key == name) target = ptr;
    if (!target) {
      issues.push_back({"tolerances." + key, "unknown tolerance"});
    } else if (!value.is_number() || !(value.get<double>() > 0.0)) {
      issues.push_back({"tolerances." + key, "must be a positive number"});
    } else {
      *target = value.get<double>();
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return t;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::to_chars_result res{};
  if (x == std::trunc(x) && std::abs(x) < 1e15)
    res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, 0);
  else
    res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  auto line = [&out](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out << ',';
      out << fields[i];
    }
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
  std::vector<std::vector<std::string>> table;
  table.reserve(rows.size());
  for (const auto& r : rows)
    table.push_back({r.case_id, std::to_string(r.N), format_number(r.energy),
                     format_number(r.extrapolated), format_number(r.observed_order),
                     format_number(r.analytic), format_number(r.rel_err)});
  write_csv(out, {"case_id", "N", "energy", "extrapolated", "observed_order", "analytic", "rel_err"},
            table);
}

}  // namespace pdem
