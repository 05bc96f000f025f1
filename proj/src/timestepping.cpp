#include "dboltz/timestepping.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "dboltz/errors.hpp"

namespace dboltz {

namespace {

void check_finite(const DGField& stage, const DGField& input, long step) {
  if (!stage.all_finite()) throw NumericalBlowup(step, std::make_shared<const DGField>(input));
}

}  // namespace

DGField rk3_step(const DGField& field, double dt, const RhsFunction& rhs, long step) {
  if (!(dt > 0.0)) throw InvalidArgument("time step must be positive");
  // Increment form of the Shu-Osher stages:
  //   u1 = u + dt k1, u2 = u + dt (k1 + k2) / 4, u+ = u + dt (k1 + k2 + 4 k3) / 6.
  const DGField k1 = rhs(field);
  check_finite(k1, field, step);
  DGField stage = field;
  axpy(dt, k1, stage);
  const DGField k2 = rhs(stage);
  check_finite(k2, field, step);
  stage = field;
  {
    auto s = stage.coeffs();
    const auto a = k1.coeffs();
    const auto b = k2.coeffs();
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += dt * (a[i] + b[i]) / 4.0;
  }
  const DGField k3 = rhs(stage);
  check_finite(k3, field, step);
  DGField out = field;
  {
    auto s = out.coeffs();
    const auto a = k1.coeffs();
    const auto b = k2.coeffs();
    const auto c = k3.coeffs();
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += dt * (a[i] / 6.0 + b[i] / 6.0 + 2.0 * c[i] / 3.0);
  }
  check_finite(out, field, step);
  return out;
}

double residual(const DGField& prev, const DGField& next, double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("residual needs dt > 0");
  if (!prev.same_space(next)) throw InvalidArgument("residual of fields from different spaces");
  const double h = prev.grid().cell_width();
  double sum = 0.0;
  for (int j = 0; j < prev.n_cells(); ++j) {
    for (int m = 0; m <= prev.degree(); ++m) {
      const double diff = next.coeff(j, m) - prev.coeff(j, m);
      sum += diff * diff * h / (2.0 * m + 1.0);
    }
  }
  return std::sqrt(sum) / dt;
}

double choose_dt(const DGField& field, const ModelParams& params, const CollisionWorkspace& ws, double cfl) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw InvalidArgument("cfl must lie in (0, 1]");
  if (field.grid() != ws.grid() || field.degree() != ws.degree()) {
    throw InvalidArgument("field and collision workspace use different grids or degrees");
  }
  const Grid& g = field.grid();
  const double drift = params.drift_coeff() * g.half_width() / g.cell_width() * (2.0 * field.degree() + 1.0);
  const std::vector<double> lambda = loss_frequency(field, params.gamma());
  const double coll = std::max(0.0, *std::max_element(lambda.begin(), lambda.end()));
  const double rate = drift + coll;
  if (!(rate > 0.0)) throw InvalidArgument("no finite time step: zero drift and zero field");
  return cfl / rate;
}

}  // namespace dboltz
