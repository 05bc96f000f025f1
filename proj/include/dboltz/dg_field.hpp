#pragma once

#include <functional>
#include <span>
#include <vector>

#include "dboltz/grid.hpp"
#include "dboltz/moments.hpp"
#include "dboltz/quadrature.hpp"

namespace dboltz {

/// Piecewise polynomial density. On cell j the field is
///   sum_m coeff(j, m) P_m(2 (xi - xi_j) / dxi),
/// with P_m the Legendre polynomials, so coeff(j, 0) is the cell average and
/// the mass matrix is diagonal: ∫_cell P_m P_n = dxi / (2m + 1) delta_mn.
class DGField {
 public:
  DGField(Grid grid, int degree);
  DGField(Grid grid, int degree, std::vector<double> coeffs);

  const Grid& grid() const noexcept { return grid_; }
  int degree() const noexcept { return degree_; }
  int n_basis() const noexcept { return degree_ + 1; }
  int n_cells() const noexcept { return grid_.n_cells(); }

  std::span<const double> coeffs() const noexcept { return coeffs_; }
  std::span<double> coeffs() noexcept { return coeffs_; }
  std::span<const double> cell(int j) const noexcept {
    return std::span<const double>(coeffs_).subspan(static_cast<std::size_t>(j) * n_basis(), n_basis());
  }

  double coeff(int j, int m) const noexcept { return coeffs_[static_cast<std::size_t>(j) * n_basis() + m]; }
  double& coeff(int j, int m) noexcept { return coeffs_[static_cast<std::size_t>(j) * n_basis() + m]; }

  /// Value of the cell-j polynomial at local coordinate z in [-1, 1].
  double eval_local(int j, double z) const noexcept;

  bool same_space(const DGField& other) const noexcept {
    return degree_ == other.degree_ && grid_ == other.grid_;
  }
  bool all_finite() const noexcept;

  friend bool operator==(const DGField&, const DGField&) = default;

 private:
  Grid grid_;
  int degree_;
  std::vector<double> coeffs_;
};

enum class Trace { left, right };

/// Point evaluation. Away from edges `side` is irrelevant; at an interior
/// edge it picks the limit from the left or right cell. At ±L the interior
/// trace is returned. Throws OutOfDomain outside [-L, L].
double eval_field(const DGField& field, double xi, Trace side = Trace::right);

/// Pointwise profile with the locations of its jump discontinuities.
/// Projection integrates each smooth piece separately.
struct Profile {
  std::function<double(double)> density;
  std::vector<double> breakpoints;
};

/// L2 projection onto piecewise Legendre polynomials of the given degree.
DGField project_initial(const Profile& profile, const Grid& grid, int degree,
                        const QuadratureRule& quad);

/// M_p = ∫ |xi|^p g dxi for every order, plus the signed momentum. M_0 is
/// the exact sum of cell averages times dxi.
MomentRecord field_moments(const DGField& field, std::span<const double> orders,
                           double time = 0.0, TimeAxis axis = TimeAxis::rescaled);

/// ∫ g dxi and ∫ xi g dxi in closed form from the coefficients.
double field_mass(const DGField& field);
double field_momentum(const DGField& field);

/// L2 norm over [-L, L], exact via Legendre orthogonality.
double l2_norm(const DGField& field);

/// ∫ |g - f| over [-L, L] with an n-point rule per cell.
double l1_distance(const DGField& field, const std::function<double(double)>& f, int nodes = 12);

/// Values at the nodes of `quad` in every cell; result[j * quad.size() + q].
std::vector<double> node_values(const DGField& field, const QuadratureRule& quad);

/// Coefficient-wise a x + y (same space required).
void axpy(double alpha, const DGField& x, DGField& y);

}  // namespace dboltz
