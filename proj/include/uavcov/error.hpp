#ifndef UAVCOV_ERROR_HPP
#define UAVCOV_ERROR_HPP

#include <stdexcept>
#include <string>

namespace uavcov {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (negative height, R <= 0, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// A scenario violates the preconditions of the analytical evaluators.
class PreconditionViolation : public Error {
public:
  using Error::Error;
};

/// SINR threshold is not strictly above 1 (0 dB) on an analytical path.
class TauOutOfRange : public PreconditionViolation {
public:
  using PreconditionViolation::PreconditionViolation;
};

/// The linear-borderline construction has a negative discriminant.
class GeometryInfeasible : public Error {
public:
  using Error::Error;
};

/// A corner-height denominator vanished.
class DegenerateGeometry : public Error {
public:
  using Error::Error;
};

/// None of the six uptilt regimes matches the scenario.
class CaseUndefined : public Error {
public:
  using Error::Error;
};

/// A closed-form intermediate evaluated to NaN or infinity.
class NonFiniteTerm : public Error {
public:
  NonFiniteTerm(const std::string& term, double value)
      : Error("non-finite closed-form term '" + term + "' = " + std::to_string(value)),
        term_(term) {}

  const std::string& term() const noexcept { return term_; }

private:
  std::string term_;
};

/// Invalid run configuration (unknown key, malformed value, missing input).
class ConfigError : public Error {
public:
  using Error::Error;
};

}  // namespace uavcov

#endif  // UAVCOV_ERROR_HPP
