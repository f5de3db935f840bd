#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pdem {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A square-root argument went negative: the (D, l, lambda) combination has no real
/// effective angular momentum.
class NegativeRadicand : public Error {
public:
  using Error::Error;
};

class InvalidParameter : public Error {
public:
  using Error::Error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

class QuadratureFailure : public Error {
public:
  using Error::Error;
};

class SingularPotential : public Error {
public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
public:
  using Error::Error;
};

/// Observed finite-difference order fell below the accepted floor.
class OrderMismatch : public Error {
public:
  using Error::Error;
};

struct FieldIssue {
  std::string field;
  std::string message;
};

/// Aggregated parameter validation failure; carries one entry per violated invariant.
class ValidationError : public Error {
public:
  explicit ValidationError(std::vector<FieldIssue> issues);
  ValidationError(std::string field, std::string message);

  const std::vector<FieldIssue>& issues() const noexcept { return issues_; }

private:
  std::vector<FieldIssue> issues_;
};

}  // namespace pdem
