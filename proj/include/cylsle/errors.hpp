#ifndef CYLSLE_ERRORS_HPP
#define CYLSLE_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cylsle {

/// An argument lies outside the domain of the function (pole, boundary,
/// invalid modulus, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A series did not reach the requested relative tolerance within the term
/// budget.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid Monte Carlo or precision configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A Monte Carlo run ran out of budget. Carries what was collected so far.
class PartialResultError : public std::runtime_error {
 public:
  PartialResultError(const std::string& what, std::int64_t accepted,
                     std::int64_t left, std::int64_t requested)
      : std::runtime_error(what),
        accepted_(accepted),
        left_(left),
        requested_(requested) {}

  std::int64_t accepted() const noexcept { return accepted_; }
  std::int64_t left() const noexcept { return left_; }
  std::int64_t requested() const noexcept { return requested_; }

 private:
  std::int64_t accepted_;
  std::int64_t left_;
  std::int64_t requested_;
};

}  // namespace cylsle

#endif  // CYLSLE_ERRORS_HPP
