#pragma once

#include <functional>

#include "dboltz/collision.hpp"
#include "dboltz/dg_field.hpp"
#include "dboltz/params.hpp"

namespace dboltz {

using RhsFunction = std::function<DGField(const DGField&)>;

/// One Shu-Osher TVD-RK3 step. Throws NumericalBlowup (carrying `step` and
/// the input state) if any stage produces a non-finite coefficient.
DGField rk3_step(const DGField& field, double dt, const RhsFunction& rhs, long step = 0);

/// sqrt(∫ ((next - prev) / dt)^2 dxi), exact through Legendre orthogonality.
double residual(const DGField& prev, const DGField& next, double dt);

/// cfl / (c L / dxi (2k + 1) + max lambda), with lambda the loss frequency at
/// the cell centers. Throws InvalidArgument if both terms vanish.
double choose_dt(const DGField& field, const ModelParams& params, const CollisionWorkspace& ws, double cfl);

}  // namespace dboltz
