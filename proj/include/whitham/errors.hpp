#ifndef WHITHAM_ERRORS_HPP
#define WHITHAM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace whitham {

/// Input lies outside the domain where a formula or construction is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Argument outside a tabulated range.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Kernel evaluated at its singular point.
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Bump geometry cannot realize the requested slopes; use a smaller width.
class GeometryError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Quadrature or other approximation missed its tolerance.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// Malformed configuration or inconsistent inputs.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed CSV or summary file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace whitham

#endif  // WHITHAM_ERRORS_HPP
