#pragma once

#include <stdexcept>
#include <string>

namespace bohrconv {

/// Argument outside a function's mathematical domain (e.g. W(x) for x < -1/e).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed input that no formula could accept (shape or sign errors).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A required hypothesis does not hold at the requested parameters.
class HypothesisViolation : public std::runtime_error {
 public:
  HypothesisViolation(std::string condition, const std::string& what)
      : std::runtime_error(what), condition_(std::move(condition)) {}

  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

/// Root finder found no sign change where one was required.
class NoRootError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bohrconv
