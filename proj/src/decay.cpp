#include "dboltz/decay.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dboltz/errors.hpp"

namespace dboltz {

double decay_upper(double k, double mk0, const ModelParams& params, double t) {
  if (!(k >= 2.0)) throw InvalidArgument("upper envelope needs k >= 2, got " + std::to_string(k));
  if (!(mk0 >= 0.0)) throw InvalidArgument("initial moment must be >= 0");
  if (!(t >= 0.0)) throw InvalidArgument("time must be >= 0");
  const double g = params.gamma();
  const double diss = params.dissipation(k);
  if (g == 0.0) return mk0 * std::exp(-0.5 * diss * t);
  const double base = 1.0 + g / (2.0 * k) * diss * std::pow(mk0, g / k) * t;
  return mk0 * std::pow(base, -k / g);
}

double LowerEnvelope::operator()(double t) const {
  return amplitude * std::pow(1.0 + kappa * t, -order / gamma);
}

LowerEnvelope fit_lower_envelope(std::span<const MomentRecord> series, double p, const ModelParams& params) {
  const double g = params.gamma();
  if (!(g > 0.0)) throw InvalidArgument("lower envelope needs gamma > 0");
  if (series.empty()) throw InsufficientData("empty moment series");
  const MomentRecord& first = series.front();
  const double base = g <= 1.0 ? g : 1.0;
  if (!first.has(base) || !first.has(p)) {
    throw InsufficientData("series lacks the moments needed for the lower envelope");
  }
  LowerEnvelope env;
  env.order = p;
  env.gamma = g;
  env.amplitude = std::pow(first.moment(base), p / base);
  for (const MomentRecord& rec : series) {
    if (!(rec.time > 0.0)) continue;
    const double mp = rec.moment(p);
    if (!(mp > 0.0)) throw InsufficientData("moment underflow at t = " + std::to_string(rec.time));
    const double need = (std::pow(env.amplitude / mp, g / p) - 1.0) / rec.time;
    env.kappa = std::max(env.kappa, need);
  }
  return env;
}

double haff_fit(std::span<const MomentRecord> series, double p) {
  if (series.empty()) throw InsufficientData("empty moment series");
  const double t_end = series.back().time;
  if (!(t_end > 0.0)) throw InsufficientData("series does not reach positive time");
  const double t_start = t_end / 10.0;
  std::vector<double> xs;
  std::vector<double> ys;
  for (const MomentRecord& rec : series) {
    if (rec.time < t_start || !(rec.time > 0.0)) continue;
    if (!rec.has(p)) throw InsufficientData("order not recorded");
    const double mp = rec.moment(p);
    if (!(mp > 0.0) || !std::isfinite(mp)) throw InsufficientData("moment underflow at t = " + std::to_string(rec.time));
    xs.push_back(std::log(rec.time));
    ys.push_back(std::log(mp));
  }
  if (xs.size() < 10) {
    throw InsufficientData("need at least 10 records in the last decade, got " + std::to_string(xs.size()));
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (!(sxx > 0.0)) throw InsufficientData("records in the fit window share one time");
  return sxy / sxx;
}

double rescaled_bound(double p, double mp0, const ModelParams& params) {
  if (!(p >= 2.0)) throw InvalidArgument("rescaled bound needs p >= 2");
  if (!(params.gamma() > 0.0)) throw InvalidArgument("rescaled bound needs gamma > 0");
  const double level = std::pow(2.0 * p * params.drift_coeff() / params.dissipation(p), p / params.gamma());
  return std::max(mp0, level);
}

BoundReport check_rescaled_bounds(std::span<const MomentRecord> series, const ModelParams& params,
                                  const std::map<double, double>& initial, double tolerance) {
  BoundReport report;
  for (const auto& [p, mp0] : initial) {
    const double bound = rescaled_bound(p, mp0, params);
    report.bounds[p] = bound;
    double worst = 0.0;
    for (const MomentRecord& rec : series) {
      if (!rec.has(p)) continue;
      const double v = rec.moment(p);
      worst = std::max(worst, v / bound);
      if (!(v <= bound * (1.0 + tolerance))) report.violations.push_back({rec.time, p, v, bound});
    }
    report.max_ratio[p] = worst;
  }
  return report;
}

}  // namespace dboltz
