#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace veccost {

// Shapes of two matrices (or trajectory lengths) do not agree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An action index or target lies outside the matrix.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Argument outside the mathematical domain of an operation (e.g. |delta| >= pi/2).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed game file, race config, or CLI input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested potential minimum (r, c) cannot be realised with the fixed
// opponent costs. Carries the 0-based columns j != c of row r that violate
// the margin.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, std::vector<std::size_t> columns)
      : std::runtime_error(what), violating_columns_(std::move(columns)) {}
  const std::vector<std::size_t>& violating_columns() const {
    return violating_columns_;
  }

 private:
  std::vector<std::size_t> violating_columns_;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double objective,
                   double gradient_norm)
      : std::runtime_error(what),
        objective_(objective),
        gradient_norm_(gradient_norm) {}
  double objective() const { return objective_; }
  double gradient_norm() const { return gradient_norm_; }

 private:
  double objective_;
  double gradient_norm_;
};

}  // namespace veccost
