#pragma once

// JSON configuration and CSV output.
//
// Config schema (every parameter accepts a scalar or a list; lists expand as a
// Cartesian product):
//
//   {
//     "m0": 1, "lambda": [0, 1, 2], "D": [1, 2, 3, 4, 5], "l": [0, 1, 2],
//     "potential": {"kind": ["pseudoharmonic", "kratzer"], "Ve": 1, "re": 1},
//     "n": [0, 1, 2, 3]                  // or {"min": 0, "max": 3}
//     "solver": {"grid_N": [4000, 8000, 16000], "r_max": 20},
//     "tolerances": {"numeric": 1e-6, ...}
//   }
//
// For the pseudoharmonic family "eta" may replace "Ve" (Ve = eta^2 re^2 / 2).
// Derived constants are never read from a file.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "pdem/verify.hpp"

namespace pdem {

struct CaseSpec {
  CaseMatrix matrix;
  SolverOptions solver;
  Tolerances tolerances;
};

/// Throws ValidationError with one entry per bad field.
CaseSpec parse_case_spec(const nlohmann::json& config);
/// Reads and parses a file; unreadable or malformed JSON is a ValidationError.
CaseSpec load_case_spec(const std::filesystem::path& path);

/// Single parameter bundle {m0, lambda, D, l, potential: {kind, Ve, re}}.
nlohmann::json to_json(const CaseInput& input);
/// Inverse of to_json(CaseInput); validates the result.
Case case_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Tolerances& tol);
Tolerances tolerances_from_json(const nlohmann::json& j, const Tolerances& defaults = {});

/// Shortest round-trip text for integers, otherwise 17 significant digits;
/// locale independent.
std::string format_number(double x);

/// Header plus rows; one line per row, fields separated by commas.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows);

}  // namespace pdem
