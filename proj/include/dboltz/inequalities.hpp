#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dboltz/ensemble.hpp"
#include "dboltz/params.hpp"

namespace dboltz {

// Pointwise gaps: each is >= 0 exactly when the inequality holds at the point.

/// |x|^k + |y|^k - |ax+by|^k - |ay+bx|^k - (1 - a^k - b^k)|x - y|^k, k >= 2.
double dissipation_gap(double x, double y, double a, double k);

/// B_gamma(x, y) = (|ax+by|^g + |ay+bx|^g - |x|^g - |y|^g) |x - y|^g.
double b_gamma(double x, double y, double a, double gamma);

/// max{a^(p/2 - 1), b^(p/2 - 1)}.
double beta_p(double a, double p);

/// beta_p (x^2 + y^2)^(p/2) - |ax+by|^p - |ay+bx|^p.
double contraction_gap(double x, double y, double a, double p);
/// beta_p ((|x| + |y|)^p - (x^2 + y^2)^(p/2)).
double norm_gap(double x, double y, double a, double p);

/// Generalized binomial coefficient p (p - 1) ... (p - k + 1) / k!.
double binomial(double p, int k);
/// sum_{k=1}^{[(p+1)/2]} C(p,k)(u^k v^(p-k) + u^(p-k) v^k) - ((u+v)^p - u^p - v^p), p >= 1.
double binomial_gap(double u, double v, double p);

/// <Q(mu, mu), |.|^k> for mu = (1/n) sum delta_{x_i}, by the exact double sum.
double collision_moment(std::span<const double> x, const ModelParams& params, double k);
/// -(1/2)(1 - a^k - b^k) M_{k+gamma}(mu) - <Q(mu, mu), |.|^k>.
double povzner_gap(std::span<const double> x, const ModelParams& params, double k);

struct InequalityCheck {
  std::string name;
  std::uint64_t samples = 0;
  std::uint64_t violations = 0;
  /// Smallest gap normalized by the scale of its terms (absolute for the
  /// Povzner check, whose tolerance is absolute).
  double worst_relative_gap = 0.0;
  /// Point and parameters where the worst gap occurred.
  std::string worst_case;
  bool passed() const { return violations == 0; }
};

/// Smallest C with B_gamma(x, y) >= -C |x|^g |y|^g: the largest ratio over
/// `samples` random directions, polished by a local search around the best
/// one. gamma in (0, 1].
double fit_c_gamma(double a, double gamma, std::uint64_t samples, Rng& rng);

/// Closed-form lower bound for that constant, from (x, y) = (1, -1).
double c_gamma_lower_bound(double a, double gamma);

/// Randomized checks of the four elementary inequalities with random a and
/// exponents; `samples` points each. Tolerance is relative, 1e-12.
std::vector<InequalityCheck> run_inequality_suite(std::uint64_t samples, std::uint64_t seed);

/// Povzner sign test on `measures` random centered discrete measures for each
/// k in {2, 3, 4}; absolute tolerance `tol`.
InequalityCheck run_povzner_check(const ModelParams& params, int measures, std::uint64_t seed, double tol = 1e-12);

}  // namespace dboltz
