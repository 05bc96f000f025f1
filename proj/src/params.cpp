#include "dboltz/params.hpp"

#include <cmath>
#include <string>

#include "dboltz/errors.hpp"

namespace dboltz {

double ModelParams::default_drift(double gamma, double a) {
  return gamma == 0.0 ? a * (1.0 - a) : 1.0;
}

ModelParams ModelParams::make(double gamma, double a, std::optional<double> drift_coeff) {
  if (!std::isfinite(gamma) || gamma < 0.0) {
    throw InvalidArgument("gamma must be finite and >= 0, got " + std::to_string(gamma));
  }
  if (!(a > 0.0 && a < 1.0)) {
    throw InvalidArgument("a ∈ (0,1) required, got " + std::to_string(a));
  }
  const double c = drift_coeff.value_or(default_drift(gamma, a));
  if (!std::isfinite(c) || c <= 0.0) {
    throw InvalidArgument("drift coefficient must be > 0, got " + std::to_string(c));
  }
  return ModelParams(gamma, a, c);
}

ModelParams ModelParams::with_drift(double c) const {
  if (!std::isfinite(c) || c < 0.0) {
    throw InvalidArgument("drift coefficient must be >= 0, got " + std::to_string(c));
  }
  return ModelParams(gamma_, a_, c);
}

double ModelParams::dissipation(double k) const {
  return 1.0 - std::pow(a_, k) - std::pow(b_, k);
}

}  // namespace dboltz
