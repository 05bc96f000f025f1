#pragma once

#include <span>
#include <vector>

namespace dboltz {

/// Quadrature on the reference interval [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  int size() const noexcept { return static_cast<int>(nodes.size()); }
  /// Highest polynomial degree integrated exactly.
  int exact_degree() const noexcept { return 2 * size() - 1; }
};

/// n-point Gauss-Legendre rule, nodes ascending.
QuadratureRule gauss_legendre(int n);

/// Node count used per cell by the collision workspace:
/// max(2k + 2, ceil(gamma) + 2k + 2).
int default_quadrature_nodes(int degree, double gamma);

/// Legendre polynomial P_m(z).
double legendre(int m, double z);

/// P_0(z) .. P_{out.size()-1}(z).
void legendre_values(double z, std::span<double> out);

/// P_0'(z) .. P_{out.size()-1}'(z).
void legendre_derivatives(double z, std::span<double> out);

}  // namespace dboltz
