#pragma once

#include "dboltz/params.hpp"

namespace dboltz {

// Self-similar change of variables with drift coefficient c:
//   V(t) = (1 + c gamma t)^(1/gamma),  s(t) = log(1 + c gamma t) / (c gamma),
// so that V(t(s)) = exp(c s). For gamma = 0 the limits are V = exp(c t), s = t.
// All three throw InvalidArgument for negative input or c <= 0.

double scale_factor(double t, const ModelParams& params);
double rescale_time(double t, const ModelParams& params);
double unrescale_time(double s, const ModelParams& params);

}  // namespace dboltz
