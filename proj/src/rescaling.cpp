#include "dboltz/rescaling.hpp"

#include <cmath>

#include "dboltz/errors.hpp"

namespace dboltz {

namespace {

double rate(const ModelParams& params) {
  if (!(params.drift_coeff() > 0.0)) throw InvalidArgument("rescaling needs a positive drift coefficient");
  return params.drift_coeff() * params.gamma();
}

void check_time(double t) {
  if (!(t >= 0.0)) throw InvalidArgument("time must be >= 0");
}

}  // namespace

double scale_factor(double t, const ModelParams& params) {
  check_time(t);
  const double cg = rate(params);
  if (cg == 0.0) return std::exp(params.drift_coeff() * t);
  return std::exp(std::log1p(cg * t) / params.gamma());
}

double rescale_time(double t, const ModelParams& params) {
  check_time(t);
  const double cg = rate(params);
  if (cg == 0.0) return t;
  return std::log1p(cg * t) / cg;
}

double unrescale_time(double s, const ModelParams& params) {
  check_time(s);
  const double cg = rate(params);
  if (cg == 0.0) return s;
  return std::expm1(cg * s) / cg;
}

}  // namespace dboltz
