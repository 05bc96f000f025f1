#include "dboltz/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dboltz/errors.hpp"

namespace dboltz {

QuadratureRule gauss_legendre(int n) {
  if (n <= 0) throw InvalidArgument("quadrature needs at least one node, got " + std::to_string(n));
  QuadratureRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int m = 2; m <= n; ++m) {
        const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int m = 2; m <= n; ++m) {
      const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // x is the i-th largest root.
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

int default_quadrature_nodes(int degree, double gamma) {
  const int base = 2 * degree + 2;
  return std::max(base, static_cast<int>(std::ceil(gamma)) + base);
}

double legendre(int m, double z) {
  if (m == 0) return 1.0;
  double p0 = 1.0;
  double p1 = z;
  for (int n = 2; n <= m; ++n) {
    const double p2 = ((2.0 * n - 1.0) * z * p1 - (n - 1.0) * p0) / n;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

void legendre_values(double z, std::span<double> out) {
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = z;
  for (std::size_t n = 2; n < out.size(); ++n) {
    const double nn = static_cast<double>(n);
    out[n] = ((2.0 * nn - 1.0) * z * out[n - 1] - (nn - 1.0) * out[n - 2]) / nn;
  }
}

void legendre_derivatives(double z, std::span<double> out) {
  if (out.empty()) return;
  // P'_{n+1} = P'_{n-1} + (2n + 1) P_n
  double p_prev = 1.0;
  double p_cur = z;
  out[0] = 0.0;
  if (out.size() == 1) return;
  out[1] = 1.0;
  for (std::size_t n = 1; n + 1 < out.size(); ++n) {
    out[n + 1] = out[n - 1] + (2.0 * static_cast<double>(n) + 1.0) * p_cur;
    const double nn = static_cast<double>(n + 1);
    const double p_next = ((2.0 * nn - 1.0) * z * p_cur - (nn - 1.0) * p_prev) / nn;
    p_prev = p_cur;
    p_cur = p_next;
  }
}

}  // namespace dboltz
