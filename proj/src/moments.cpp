#include "dboltz/moments.hpp"

#include <cmath>
#include <string>

#include "dboltz/errors.hpp"

namespace dboltz {

double MomentRecord::moment(double p) const {
  const auto it = moments.find(p);
  if (it == moments.end()) {
    throw InvalidArgument("moment of order " + std::to_string(p) + " was not recorded");
  }
  return it->second;
}

std::vector<double> default_moment_orders() { return {0.0, 1.0, 2.0, 3.0, 4.0}; }

void validate_orders(std::span<const double> orders) {
  for (const double p : orders) {
    if (!std::isfinite(p) || p < 0.0) {
      throw InvalidArgument("moment orders must be finite and >= 0, got " + std::to_string(p));
    }
  }
}

}  // namespace dboltz
