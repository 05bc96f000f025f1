#include "dboltz/drift.hpp"

#include <vector>

#include "dboltz/quadrature.hpp"

namespace dboltz {

DGField drift_rhs(const DGField& field, const ModelParams& params) {
  const double c = params.drift_coeff();
  const Grid& g = field.grid();
  const int n = g.n_cells();
  const int nb = field.n_basis();
  const double h = g.cell_width();
  DGField out(g, field.degree());
  if (c == 0.0) return out;

  // xi g is a polynomial of degree k + 1 on each cell.
  const QuadratureRule rule = gauss_legendre(field.degree() + 2);
  std::vector<std::vector<double>> dbasis(rule.size(), std::vector<double>(nb));
  for (int q = 0; q < rule.size(); ++q) legendre_derivatives(rule.nodes[q], dbasis[q]);

  // Upwind flux xi g^ at every edge.
  std::vector<double> flux(n + 1);
  for (int e = 0; e <= n; ++e) {
    const double xi = g.edge(e);
    double trace;
    if (e == 0) {
      trace = field.eval_local(0, -1.0);
    } else if (e == n) {
      trace = field.eval_local(n - 1, 1.0);
    } else {
      trace = xi >= 0.0 ? field.eval_local(e - 1, 1.0) : field.eval_local(e, -1.0);
    }
    flux[e] = xi * trace;
  }

  for (int j = 0; j < n; ++j) {
    std::vector<double> volume(nb, 0.0);
    for (int q = 0; q < rule.size(); ++q) {
      const double z = rule.nodes[q];
      const double xg = g.to_global(j, z) * field.eval_local(j, z);
      for (int m = 0; m < nb; ++m) volume[m] += rule.weights[q] * xg * dbasis[q][m];
    }
    // ∫_cell xi g dv/dxi dxi = ∫_{-1}^{1} xi g P_m'(z) dz since dz/dxi = 2/h.
    for (int m = 0; m < nb; ++m) {
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;  // P_m(-1)
      const double edge_terms = flux[j + 1] - sign * flux[j];
      out.coeff(j, m) = c * (2.0 * m + 1.0) / h * (edge_terms - volume[m]);
    }
  }
  return out;
}

DGField rhs_total(const DGField& field, const ModelParams& params, const CollisionWorkspace& ws) {
  DGField out = collision_rhs(field, params, ws);
  axpy(-1.0, drift_rhs(field, params), out);
  return out;
}

}  // namespace dboltz
