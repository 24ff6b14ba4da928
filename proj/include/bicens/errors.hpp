#pragma once

#include <stdexcept>
#include <string>

namespace bicens {

// Malformed input text. Carries the 1-based line number of the offending record.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input that violates a domain invariant (L > R, freq <= 0, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Some observation rectangle contains no candidate point, so the
// log-likelihood is -inf for every mass vector.
class UnfittableError : public std::runtime_error {
 public:
  UnfittableError(const std::string& what, std::size_t observation)
      : std::runtime_error(what), observation_(observation) {}
  std::size_t observation() const { return observation_; }

 private:
  std::size_t observation_;
};

// The plug-in window A_n holds no observation.
class UndefinedCellError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arguments outside the domain of an asymptotic formula or a degenerate
// Fenchel denominator.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bicens
