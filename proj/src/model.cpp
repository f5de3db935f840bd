#include "pdem/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace pdem {

namespace {

std::string summarize(const std::vector<FieldIssue>& issues) {
  std::ostringstream out;
  out << "invalid parameters:";
  for (const auto& issue : issues) out << " [" << issue.field << "] " << issue.message << ";";
  return out.str();
}

double radicand(const Geometry& geom, double lambda) {
  // (D + 2l - 2)^2 + (2 + lambda)^2 - 2(2 + lambda D), rearranged so nothing cancels
  const double D = geom.D();
  const double l = geom.l();
  const double shift = D - 2.0 - lambda;
  return shift * shift + 4.0 * l * (l + D - 2.0);
}

}  // namespace

ValidationError::ValidationError(std::vector<FieldIssue> issues)
    : Error(summarize(issues)), issues_(std::move(issues)) {}

ValidationError::ValidationError(std::string field, std::string message)
    : ValidationError(std::vector<FieldIssue>{{std::move(field), std::move(message)}}) {}

MassProfile::MassProfile(double m0, double lambda) : m0_(m0), lambda_(lambda) {
  if (!(m0 > 0.0) || !std::isfinite(m0)) throw InvalidParameter("m0 must be positive");
  if (!(lambda > -2.0) || !std::isfinite(lambda))
    throw InvalidParameter("nu=1+lambda/2 must be positive (lambda > -2)");
}

double MassProfile::operator()(double r) const { return m0_ * std::pow(r, lambda_); }

Geometry::Geometry(int D, int l) : D_(D), l_(l) {
  if (D < 1) throw InvalidParameter("D must be >= 1");
  if (l < 0) throw InvalidParameter("l must be >= 0");
}

double effective_angular_momentum(const Geometry& geom, const MassProfile& mass) {
  const double arg = radicand(geom, mass.lambda());
  if (arg < 0.0) {
    std::ostringstream msg;
    msg << "negative radicand " << arg << " in effective angular momentum (D=" << geom.D()
        << ", l=" << geom.l() << ", lambda=" << mass.lambda() << ")";
    throw NegativeRadicand(msg.str());
  }
  return -0.5 * (geom.D() - 2) + std::sqrt(arg) / (2.0 + mass.lambda());
}

double lambda1_check(const Geometry& geom) {
  const double D = geom.D();
  const double base = D + 2.0 * geom.l() - 2.0;
  const double arg = base * base - 4.0 * (D - 3.0);
  if (arg < 0.0) throw NegativeRadicand("negative radicand in lambda=2 angular momentum");
  return -0.5 * (D - 2.0) + 0.25 * std::sqrt(arg);
}

double shifted_angular_index(const Geometry& geom, const MassProfile& mass) {
  const double arg = radicand(geom, mass.lambda());
  if (arg < 0.0) throw NegativeRadicand("negative radicand in effective angular momentum");
  return std::sqrt(arg) / (2.0 + mass.lambda());
}

std::string_view to_string(PotentialKind kind) noexcept {
  switch (kind) {
    case PotentialKind::pseudoharmonic: return "pseudoharmonic";
    case PotentialKind::kratzer: return "kratzer";
  }
  return "unknown";
}

PotentialKind parse_potential_kind(std::string_view text) {
  if (text == "pseudoharmonic") return PotentialKind::pseudoharmonic;
  if (text == "kratzer") return PotentialKind::kratzer;
  throw InvalidParameter("unknown potential kind '" + std::string(text) + "'");
}

PseudoharmonicParams PseudoharmonicParams::make(double Ve, double re, const MassProfile& mass) {
  if (!(Ve > 0.0) || !std::isfinite(Ve)) throw InvalidParameter("Ve must be positive");
  if (!(re > 0.0) || !std::isfinite(re)) throw InvalidParameter("re must be positive");
  PseudoharmonicParams p{};
  p.Ve = Ve;
  p.re = re;
  p.kappa = 8.0 * Ve / (re * re);
  p.eta = std::sqrt(2.0 * Ve) / re;
  p.C = mass.nu() * p.eta / mass.m0();
  return p;
}

PseudoharmonicParams PseudoharmonicParams::from_eta(double eta, double re,
                                                    const MassProfile& mass) {
  if (!(eta > 0.0)) throw InvalidParameter("eta must be positive");
  auto p = make(0.5 * eta * eta * re * re, re, mass);
  p.eta = eta;  // keep the caller's value bit-exact
  p.C = mass.nu() * eta / mass.m0();
  return p;
}

KratzerParams KratzerParams::make(double Ve, double re, const MassProfile& mass) {
  if (!(Ve >= 0.0) || !std::isfinite(Ve)) throw InvalidParameter("Ve must be non-negative");
  if (!(re > 0.0) || !std::isfinite(re)) throw InvalidParameter("re must be positive");
  KratzerParams p{};
  p.Ve = Ve;
  p.re = re;
  const double two_plus = 2.0 + mass.lambda();
  p.P = two_plus * two_plus * Ve / (4.0 * mass.m0());
  p.a = Ve > 0.0 ? 1.0 / (4.0 * Ve * re) : std::numeric_limits<double>::infinity();
  return p;
}

double KratzerParams::wave_number(int n, int D, double Lambda) const {
  const double t = D + 2.0 * Lambda - 2.0;
  return 4.0 * Ve * re / (1.0 + 2.0 * n + std::sqrt(t * t + 8.0 * Ve * re * re));
}

PotentialKind kind_of(const PotentialParams& params) noexcept {
  return std::holds_alternative<PseudoharmonicParams>(params) ? PotentialKind::pseudoharmonic
                                                              : PotentialKind::kratzer;
}

double Case::Ve() const noexcept {
  return std::visit([](const auto& p) { return p.Ve; }, potential);
}

double Case::re() const noexcept {
  return std::visit([](const auto& p) { return p.re; }, potential);
}

std::vector<FieldIssue> check_params(const CaseInput& in) {
  std::vector<FieldIssue> issues;
  if (!(in.m0 > 0.0) || !std::isfinite(in.m0)) issues.push_back({"m0", "m0 must be positive"});
  if (!(in.lambda > -2.0) || !std::isfinite(in.lambda))
    issues.push_back({"lambda", "nu=1+lambda/2 must be positive (lambda > -2)"});
  if (in.D < 1) issues.push_back({"D", "D must be >= 1"});
  if (in.l < 0) issues.push_back({"l", "l must be >= 0"});
  if (!(in.Ve > 0.0) || !std::isfinite(in.Ve)) issues.push_back({"Ve", "Ve must be positive"});
  if (!(in.re > 0.0) || !std::isfinite(in.re)) issues.push_back({"re", "re must be positive"});
  if (issues.empty()) {
    const double arg = radicand(Geometry(in.D, in.l), in.lambda);
    if (arg < 0.0)
      issues.push_back({"l", "effective angular momentum radicand is negative for this (D, l, lambda)"});
  }
  return issues;
}

Case validate_params(const CaseInput& in) {
  auto issues = check_params(in);
  if (!issues.empty()) throw ValidationError(std::move(issues));
  MassProfile mass(in.m0, in.lambda);
  Geometry geom(in.D, in.l);
  PotentialParams potential = in.kind == PotentialKind::pseudoharmonic
                                  ? PotentialParams{PseudoharmonicParams::make(in.Ve, in.re, mass)}
                                  : PotentialParams{KratzerParams::make(in.Ve, in.re, mass)};
  const double Lambda = effective_angular_momentum(geom, mass);
  return Case{mass, geom, potential, Lambda};
}

CaseInput to_input(const Case& c) {
  return CaseInput{c.mass.m0(), c.mass.lambda(), c.geom.D(), c.geom.l(), c.kind(), c.Ve(), c.re()};
}

}  // namespace pdem
