#pragma once

#include "dboltz/collision.hpp"
#include "dboltz/dg_field.hpp"
#include "dboltz/params.hpp"

namespace dboltz {

/// DG coefficients of c d_xi(xi g) with the upwind flux: the left trace where
/// xi >= 0 at an edge, the right trace where xi < 0. At ±L the interior trace
/// is used (pure outflow). Tested against v this equals
///   -c ∫ xi g v' + [c xi g^ v] over the cell edges.
DGField drift_rhs(const DGField& field, const ModelParams& params);

/// Right-hand side of d_s g = Q(g, g) - c d_xi(xi g).
DGField rhs_total(const DGField& field, const ModelParams& params, const CollisionWorkspace& ws);

}  // namespace dboltz
