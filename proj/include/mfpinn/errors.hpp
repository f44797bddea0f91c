#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mfpinn {

/// Precondition violated by the caller (bad index, shape mismatch, invalid
/// configuration value).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An elementary operation was evaluated outside its real domain or produced
/// a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(std::string op, const std::string& what)
      : std::runtime_error(op + ": " + what), op_(std::move(op)) {}

  const std::string& op() const noexcept { return op_; }

 private:
  std::string op_;
};

/// A non-finite quantity showed up in a reduction. `index` identifies the
/// first offending entry (parameter index, collocation point, sample, ...).
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, std::size_t index)
      : std::runtime_error(what + " (index " + std::to_string(index) + ")"), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Root bracketing failed (no sign change on the search interval).
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mfpinn
