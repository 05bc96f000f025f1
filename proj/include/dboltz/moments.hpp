#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace dboltz {

enum class TimeAxis { original, rescaled };

/// Moments M_p = ∫ |x|^p dmu at one instant.
struct MomentRecord {
  double time = 0.0;
  TimeAxis axis = TimeAxis::original;
  std::map<double, double> moments;
  /// Signed first moment ∫ x dmu.
  std::optional<double> momentum;
  /// Steady-state residual of the step that produced this record, if any.
  std::optional<double> residual;

  bool has(double p) const { return moments.contains(p); }
  /// Throws InvalidArgument when order p was not recorded.
  double moment(double p) const;
  double energy() const { return moment(2.0); }
};

/// Orders recorded by default by the drivers.
std::vector<double> default_moment_orders();

/// Throws InvalidArgument for negative or non-finite orders.
void validate_orders(std::span<const double> orders);

}  // namespace dboltz
