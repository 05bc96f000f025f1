#pragma once

#include <span>

#include "dboltz/ensemble.hpp"

namespace dboltz {

/// Kantorovich-Rubinstein distance between two equal-weight empirical
/// measures: the mean gap of sorted samples when sizes agree, otherwise
/// ∫ |F_x - F_y|. Throws InvalidArgument on empty input.
double w1_distance(std::span<const double> x, std::span<const double> y);
double w1_distance(const ParticleEnsemble& x, const ParticleEnsemble& y);

/// W_p for equal sizes via the sorted coupling, p >= 1.
double wp_distance(std::span<const double> x, std::span<const double> y, double p);

}  // namespace dboltz
