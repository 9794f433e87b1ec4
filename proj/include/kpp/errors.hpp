#pragma once

#include <stdexcept>
#include <string>

namespace kpp {

// Bad input: a named parameter violates its contract.
class ValidationError : public std::runtime_error {
public:
  ValidationError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

private:
  std::string field_;
};

// A numerical procedure failed to converge or produced non-finite values.
class SolverError : public std::runtime_error {
public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// A search premise (an inequality the input must satisfy) does not hold.
class PremiseError : public std::runtime_error {
public:
  explicit PremiseError(const std::string& what) : std::runtime_error(what) {}
};

// A simulated front reached the edge of the computational strip.
class DomainOverrunError : public std::runtime_error {
public:
  explicit DomainOverrunError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kpp
