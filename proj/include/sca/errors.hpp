#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sca {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numeric parameter is outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Caller broke a precondition (shape mismatch, non-Hermitian input, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// A strategy profile left its feasible set.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// A matrix expected to be positive definite is not.
class DefinitenessError : public Error {
 public:
  using Error::Error;
};

/// A multiplier search bracket does not contain a root.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// Policy/problem mismatch or an invalid experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An inner solver failed inside the outer iteration.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, long iteration, std::size_t user)
      : Error("iteration " + std::to_string(iteration) + ", user " + std::to_string(user) + ": " +
              what),
        iteration_(iteration),
        user_(user) {}

  long iteration() const { return iteration_; }
  std::size_t user() const { return user_; }

 private:
  long iteration_;
  std::size_t user_;
};

}  // namespace sca
