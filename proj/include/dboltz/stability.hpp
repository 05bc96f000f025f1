#pragma once

#include <cstdint>
#include <vector>

#include "dboltz/ensemble.hpp"
#include "dboltz/params.hpp"

namespace dboltz {

/// Osgood function of Phi(r) = r (1 + |log r|): Psi' = -1 / Phi, Psi(1) = 0.
double osgood_psi(double x);
double osgood_psi_inverse(double y);

struct StabilityResult {
  std::vector<double> times;
  std::vector<double> distances;  ///< d_KR(mu_t, nu_t)
  double initial_distance = 0.0;
  /// Smallest K with d(t) <= Psi^{-1}(Psi(d0) - K t) at every recorded t.
  double fitted_k = 0.0;
  double envelope(double t) const;
};

/// Runs the particle dynamics from mu0 and nu0 with shared randomness: both
/// systems see the same candidate count (under the larger majorant), the
/// same pair of ranks and the same uniform, and each accepts on its own
/// kernel value. Particles are paired by rank, so the ensembles must have
/// equal size; nu0 = mu0 gives d_KR = 0 for all time.
StabilityResult stability_experiment(const ParticleEnsemble& mu0, const ParticleEnsemble& nu0,
                                     const ModelParams& params, double t_end, std::uint64_t seed,
                                     int n_records = 51, double dt_max = 0.05);

/// nu0 = (1 + delta) mu0 with delta chosen so that d_KR(mu0, nu0) = d0.
ParticleEnsemble dilate_to_distance(const ParticleEnsemble& mu0, double d0);

}  // namespace dboltz
