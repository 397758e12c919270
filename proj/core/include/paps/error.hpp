#pragma once

#include <stdexcept>
#include <string>

namespace paps {

/// Precondition on a numeric argument failed (reversed interval, p < 1, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A signal was evaluated outside the interval it is defined on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Result not representable (overflow) or outside the supported region.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// An improper integral required by a constant does not converge.
class DivergenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Scenario or solver configuration is inconsistent.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// A sufficient condition of an existence theorem does not hold. `margin()` is
/// the signed slack of the violated inequality (negative when refused).
class HypothesisError : public std::runtime_error {
 public:
  HypothesisError(const std::string& what, double margin)
      : std::runtime_error(what), margin_(margin) {}
  double margin() const noexcept { return margin_; }

 private:
  double margin_;
};

/// Failure inside a fixed-point map; carries the iteration index.
class IterationError : public std::runtime_error {
 public:
  IterationError(std::size_t iteration, const std::string& what)
      : std::runtime_error("iteration " + std::to_string(iteration) + ": " + what),
        iteration_(iteration) {}
  std::size_t iteration() const noexcept { return iteration_; }

 private:
  std::size_t iteration_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace paps
