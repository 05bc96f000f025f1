#include "dboltz/dg_field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dboltz/errors.hpp"

namespace dboltz {

DGField::DGField(Grid grid, int degree) : grid_(grid), degree_(degree) {
  if (degree < 0) throw InvalidArgument("polynomial degree must be >= 0, got " + std::to_string(degree));
  coeffs_.assign(static_cast<std::size_t>(grid_.n_cells()) * n_basis(), 0.0);
}

DGField::DGField(Grid grid, int degree, std::vector<double> coeffs)
    : grid_(grid), degree_(degree), coeffs_(std::move(coeffs)) {
  if (degree < 0) throw InvalidArgument("polynomial degree must be >= 0, got " + std::to_string(degree));
  if (coeffs_.size() != static_cast<std::size_t>(grid_.n_cells()) * n_basis()) {
    throw InvalidArgument("expected " + std::to_string(grid_.n_cells() * n_basis()) +
                          " coefficients, got " + std::to_string(coeffs_.size()));
  }
}

double DGField::eval_local(int j, double z) const noexcept {
  // Clenshaw-free direct recurrence; degrees are small.
  const auto c = cell(j);
  double p0 = 1.0;
  double value = c[0];
  if (degree_ == 0) return value;
  double p1 = z;
  value += c[1] * p1;
  for (int n = 2; n <= degree_; ++n) {
    const double p2 = ((2.0 * n - 1.0) * z * p1 - (n - 1.0) * p0) / n;
    value += c[n] * p2;
    p0 = p1;
    p1 = p2;
  }
  return value;
}

bool DGField::all_finite() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](double v) { return std::isfinite(v); });
}

double eval_field(const DGField& field, double xi, Trace side) {
  const Grid& g = field.grid();
  int j = g.locate(xi);
  if (side == Trace::left && j > 0 && xi == g.edge(j)) --j;
  return field.eval_local(j, std::clamp(g.to_local(j, xi), -1.0, 1.0));
}

DGField project_initial(const Profile& profile, const Grid& grid, int degree,
                        const QuadratureRule& quad) {
  if (degree < 0) throw InvalidArgument("polynomial degree must be >= 0, got " + std::to_string(degree));
  if (quad.size() == 0) throw InvalidArgument("empty quadrature rule");
  DGField field(grid, degree);
  const int nb = degree + 1;
  const double h = grid.cell_width();
  std::vector<double> basis(nb);
  std::vector<double> pieces;
  for (int j = 0; j < grid.n_cells(); ++j) {
    const double lo = grid.edge(j);
    const double hi = grid.edge(j + 1);
    pieces.assign({lo});
    for (const double bp : profile.breakpoints) {
      if (bp > lo && bp < hi) pieces.push_back(bp);
    }
    pieces.push_back(hi);
    std::sort(pieces.begin(), pieces.end());
    for (std::size_t s = 0; s + 1 < pieces.size(); ++s) {
      const double mid = 0.5 * (pieces[s] + pieces[s + 1]);
      const double half = 0.5 * (pieces[s + 1] - pieces[s]);
      for (int q = 0; q < quad.size(); ++q) {
        const double xi = mid + half * quad.nodes[q];
        const double f = profile.density(xi);
        legendre_values(grid.to_local(j, xi), basis);
        for (int m = 0; m < nb; ++m) field.coeff(j, m) += half * quad.weights[q] * f * basis[m];
      }
    }
    for (int m = 0; m < nb; ++m) field.coeff(j, m) *= (2.0 * m + 1.0) / h;
  }
  return field;
}

double field_mass(const DGField& field) {
  double mass = 0.0;
  for (int j = 0; j < field.n_cells(); ++j) mass += field.coeff(j, 0);
  return mass * field.grid().cell_width();
}

double field_momentum(const DGField& field) {
  const Grid& g = field.grid();
  const double h = g.cell_width();
  double p = 0.0;
  for (int j = 0; j < field.n_cells(); ++j) {
    double cell = g.center(j) * field.coeff(j, 0);
    if (field.degree() >= 1) cell += h * field.coeff(j, 1) / 6.0;
    p += cell;
  }
  return p * h;
}

MomentRecord field_moments(const DGField& field, std::span<const double> orders, double time,
                           TimeAxis axis) {
  validate_orders(orders);
  MomentRecord rec;
  rec.time = time;
  rec.axis = axis;
  rec.momentum = field_momentum(field);
  const Grid& g = field.grid();
  for (const double p : orders) {
    if (p == 0.0) {
      rec.moments[p] = field_mass(field);
      continue;
    }
    const int n = std::max(16, (field.degree() + static_cast<int>(std::ceil(p)) + 2) / 2 + 1);
    const QuadratureRule rule = gauss_legendre(n);
    double total = 0.0;
    for (int j = 0; j < field.n_cells(); ++j) {
      const double lo = g.edge(j);
      const double hi = g.edge(j + 1);
      // |xi|^p has a kink at 0; split the cell there if needed.
      const double cuts[3] = {lo, (lo < 0.0 && hi > 0.0) ? 0.0 : hi, hi};
      for (int s = 0; s < 2; ++s) {
        const double a = cuts[s];
        const double b = cuts[s + 1];
        if (b <= a) continue;
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        double part = 0.0;
        for (int q = 0; q < n; ++q) {
          const double xi = mid + half * rule.nodes[q];
          part += rule.weights[q] * std::pow(std::abs(xi), p) * field.eval_local(j, g.to_local(j, xi));
        }
        total += half * part;
      }
    }
    rec.moments[p] = total;
  }
  return rec;
}

double l2_norm(const DGField& field) {
  const double h = field.grid().cell_width();
  double sum = 0.0;
  for (int j = 0; j < field.n_cells(); ++j) {
    for (int m = 0; m <= field.degree(); ++m) {
      const double c = field.coeff(j, m);
      sum += c * c * h / (2.0 * m + 1.0);
    }
  }
  return std::sqrt(sum);
}

double l1_distance(const DGField& field, const std::function<double(double)>& f, int nodes) {
  const QuadratureRule rule = gauss_legendre(nodes);
  const Grid& g = field.grid();
  double total = 0.0;
  for (int j = 0; j < field.n_cells(); ++j) {
    double part = 0.0;
    for (int q = 0; q < rule.size(); ++q) {
      const double z = rule.nodes[q];
      part += rule.weights[q] * std::abs(field.eval_local(j, z) - f(g.to_global(j, z)));
    }
    total += 0.5 * g.cell_width() * part;
  }
  return total;
}

std::vector<double> node_values(const DGField& field, const QuadratureRule& quad) {
  std::vector<double> out(static_cast<std::size_t>(field.n_cells()) * quad.size());
  for (int j = 0; j < field.n_cells(); ++j) {
    for (int q = 0; q < quad.size(); ++q) {
      out[static_cast<std::size_t>(j) * quad.size() + q] = field.eval_local(j, quad.nodes[q]);
    }
  }
  return out;
}

void axpy(double alpha, const DGField& x, DGField& y) {
  if (!x.same_space(y)) throw InvalidArgument("axpy on fields from different spaces");
  auto yc = y.coeffs();
  const auto xc = x.coeffs();
  for (std::size_t i = 0; i < yc.size(); ++i) yc[i] += alpha * xc[i];
}

}  // namespace dboltz
