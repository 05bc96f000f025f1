#pragma once

#include <memory>
#include <stdexcept>
#include <string>

namespace dboltz {

class DGField;

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point was requested outside [-L, L].
class OutOfDomain : public std::out_of_range {
 public:
  OutOfDomain(double xi, double half_width);
  double point() const noexcept { return xi_; }

 private:
  double xi_;
};

/// Workspace tables would exceed the configured byte budget.
class BudgetExceeded : public InvalidArgument {
 public:
  BudgetExceeded(std::size_t requested, std::size_t budget);
  std::size_t requested() const noexcept { return requested_; }
  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t requested_;
  std::size_t budget_;
};

/// Base for solver failures that keep the last state that was still finite.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, long step, std::shared_ptr<const DGField> last_state);
  long step() const noexcept { return step_; }
  /// May be null when the failure happened outside a driver loop.
  const std::shared_ptr<const DGField>& last_state() const noexcept { return last_state_; }

 private:
  long step_;
  std::shared_ptr<const DGField> last_state_;
};

class NumericalBlowup : public SolverError {
 public:
  NumericalBlowup(long step, std::shared_ptr<const DGField> last_state = nullptr);
};

class MaxStepsExceeded : public SolverError {
 public:
  MaxStepsExceeded(long step, double residual, std::shared_ptr<const DGField> last_state);
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration problem tied to a key and (when known) a source line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, int line, const std::string& message);
  const std::string& key() const noexcept { return key_; }
  int line() const noexcept { return line_; }

 private:
  std::string key_;
  int line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dboltz
