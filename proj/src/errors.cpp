#include "dboltz/errors.hpp"

#include <sstream>

#include "dboltz/dg_field.hpp"

namespace dboltz {

namespace {

std::string describe_point(double xi, double half_width) {
  std::ostringstream os;
  os << "point " << xi << " lies outside the domain [" << -half_width << ", " << half_width << "]";
  return os.str();
}

}  // namespace

OutOfDomain::OutOfDomain(double xi, double half_width)
    : std::out_of_range(describe_point(xi, half_width)), xi_(xi) {}

BudgetExceeded::BudgetExceeded(std::size_t requested, std::size_t budget)
    : InvalidArgument("collision workspace needs " + std::to_string(requested) +
                      " bytes, budget is " + std::to_string(budget)),
      requested_(requested),
      budget_(budget) {}

SolverError::SolverError(const std::string& what, long step,
                         std::shared_ptr<const DGField> last_state)
    : std::runtime_error(what), step_(step), last_state_(std::move(last_state)) {}

NumericalBlowup::NumericalBlowup(long step, std::shared_ptr<const DGField> last_state)
    : SolverError("non-finite coefficients at step " + std::to_string(step), step,
                  std::move(last_state)) {}

MaxStepsExceeded::MaxStepsExceeded(long step, double residual,
                                   std::shared_ptr<const DGField> last_state)
    : SolverError("residual " + std::to_string(residual) + " above threshold after " +
                      std::to_string(step) + " steps",
                  step, std::move(last_state)),
      residual_(residual) {}

ConfigError::ConfigError(std::string key, int line, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string{}) +
                         (key.empty() ? std::string{} : "key '" + key + "': ") + message),
      key_(std::move(key)),
      line_(line) {}

}  // namespace dboltz
