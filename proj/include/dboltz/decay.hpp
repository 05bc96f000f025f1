#pragma once

#include <map>
#include <span>
#include <vector>

#include "dboltz/moments.hpp"
#include "dboltz/params.hpp"

namespace dboltz {

/// Upper envelope for M_k along the unscaled flow (k >= 2):
///   M_k(0) (1 + (gamma / 2k)(1 - a^k - b^k) M_k(0)^(gamma/k) t)^(-k/gamma),
/// with the limit M_k(0) exp(-(1 - a^k - b^k) t / 2) at gamma = 0.
double decay_upper(double k, double mk0, const ModelParams& params, double t);

/// Lower envelope A0 (1 + kappa t)^(-p/gamma) for M_p. A0 is M_gamma(0)^(p/gamma)
/// for gamma <= 1 and M_1(0)^p for gamma > 1; kappa is the smallest rate that
/// keeps the envelope below the data.
struct LowerEnvelope {
  double order = 2.0;
  double gamma = 1.0;
  double amplitude = 0.0;
  double kappa = 0.0;
  double operator()(double t) const;
};

/// Fits the lower envelope. The series must record order p and the base
/// order (gamma or 1) at time 0. Throws InsufficientData otherwise.
LowerEnvelope fit_lower_envelope(std::span<const MomentRecord> series, double p, const ModelParams& params);

/// Least-squares slope of log M_p against log t over the last decade of
/// recorded times. Needs at least 10 positive-time records in that window.
double haff_fit(std::span<const MomentRecord> series, double p);

struct BoundViolation {
  double time = 0.0;
  double order = 0.0;
  double value = 0.0;
  double bound = 0.0;
};

struct BoundReport {
  /// Bound per order: max{M_p(0), (2 p c / (1 - a^p - b^p))^(p/gamma)}.
  std::map<double, double> bounds;
  /// Largest value / bound per order over the series.
  std::map<double, double> max_ratio;
  std::vector<BoundViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Upper bound on M_p along the rescaled flow for p >= 2, gamma > 0.
double rescaled_bound(double p, double mp0, const ModelParams& params);

/// Checks each recorded order in `initial` against its rescaled bound with
/// relative tolerance `tolerance`.
BoundReport check_rescaled_bounds(std::span<const MomentRecord> series, const ModelParams& params,
                                  const std::map<double, double>& initial, double tolerance = 0.05);

}  // namespace dboltz
