#pragma once

#include <string>
#include <vector>

#include "dboltz/config.hpp"
#include "dboltz/dg_field.hpp"
#include "dboltz/params.hpp"

namespace dboltz {

struct CheckItem {
  std::string name;
  bool passed = false;
  /// Worst observed value of the checked quantity (error, gap, ...).
  double measure = 0.0;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckItem> items;
  bool all_passed() const;
};

/// -ab ∬ g(x) g(y) |x - y|^(2 + gamma) dx dy by a direct tensor Gauss rule on
/// every pair of cells, with diagonal cells split along x = y. Does not use
/// the collision tables.
double brute_energy_dissipation(const DGField& field, const ModelParams& params, int nodes = 24);

/// Minimum over all n! couplings of (1/n) sum |x_i - y_pi(i)|.
double brute_w1(const std::vector<double>& x, const std::vector<double>& y);

/// The property suite behind `mode = checks`: elementary inequalities,
/// Povzner sign test, C_gamma fit, W1 against exhaustive couplings,
/// conservation and energy identity of the discrete collision operator,
/// exact conservation of the particle dynamics, and rescaling round trips.
CheckReport run_checks(const RunConfig& config);

}  // namespace dboltz
