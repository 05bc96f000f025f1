#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dboltz/dg_field.hpp"
#include "dboltz/grid.hpp"
#include "dboltz/params.hpp"
#include "dboltz/quadrature.hpp"

namespace dboltz {

/// One source node pair (x_q in cell i, y_r in cell j) of the tensor rule
/// together with both post-collision points.
struct PairEntry {
  double x = 0.0;
  double y = 0.0;
  /// w_q w_r |x - y|^gamma on the reference square.
  double weight = 0.0;
  double target_a = 0.0;  ///< a x + b y
  double target_b = 0.0;  ///< b x + a y
  int cell_a = 0;
  int cell_b = 0;
  std::vector<double> basis_a;  ///< P_m at target_a, local to cell_a
  std::vector<double> basis_b;
};

/// Precomputed quadrature tables for the gain and loss parts of Q(g, g).
///
/// On a uniform grid the geometry of a source pair depends only on the cell
/// offset d = i - j and on the node pair, so the tables are indexed by
/// (d, node pair) and reused along every diagonal of the (i, j) plane. Cell
/// pairs with d = 0 carry the kink of |x - y|^gamma inside the square; they
/// use a rule split along x = y (symmetrized in x and y) instead of the
/// plain tensor rule so that polynomial moments such as the energy are
/// integrated exactly for integer gamma.
class CollisionWorkspace {
 public:
  static constexpr std::size_t default_budget = std::size_t{1} << 30;

  CollisionWorkspace(const Grid& grid, int degree, const QuadratureRule& quad,
                     const ModelParams& params, std::size_t byte_budget = default_budget);

  const Grid& grid() const noexcept { return grid_; }
  int degree() const noexcept { return degree_; }
  const QuadratureRule& quadrature() const noexcept { return quad_; }
  double gamma() const noexcept { return gamma_; }
  double a() const noexcept { return a_; }

  /// Tensor-rule data for source cells (i, j) and nodes (q, r).
  PairEntry entry(int i, int j, int q, int r) const;

  std::size_t table_bytes() const noexcept;
  static std::size_t estimate_bytes(int n_cells, int degree, int n_nodes);

  /// Worker threads used by collision_rhs. The result does not depend on
  /// this value: work is split into a fixed set of chunks reduced in order.
  void set_threads(int threads);
  int threads() const noexcept { return threads_; }

  friend bool operator==(const CollisionWorkspace& x, const CollisionWorkspace& y) {
    return x.grid_ == y.grid_ && x.degree_ == y.degree_ && x.gamma_ == y.gamma_ && x.a_ == y.a_ &&
           x.points_ == y.points_ && x.point_basis_ == y.point_basis_ && x.d_begin_ == y.d_begin_ &&
           x.sx_ == y.sx_ && x.sy_ == y.sy_ && x.offset_ == y.offset_ && x.weight_ == y.weight_ &&
           x.target_basis_ == y.target_basis_;
  }

 private:
  friend DGField collision_rhs(const DGField&, const ModelParams&, const CollisionWorkspace&);

  void add_entry(int d, int sx, int sy, double zx, double zy, double weight);
  int add_point(double z);

  Grid grid_;
  int degree_;
  QuadratureRule quad_;
  double gamma_;
  double a_;
  int threads_ = 1;

  // Local coordinates of every source point; the first quad_.size() are the
  // Gauss nodes.
  std::vector<double> points_;
  std::vector<double> point_basis_;  // [point * nb + m]

  // Entries grouped by offset d = i - j in [-(N-1), N-1].
  std::vector<std::int32_t> d_begin_;  // size 2N
  std::vector<std::int32_t> sx_;
  std::vector<std::int32_t> sy_;
  std::vector<std::int32_t> offset_;  // target cell minus j
  std::vector<double> weight_;        // includes the (dxi / 2)^2 Jacobian
  std::vector<double> target_basis_;  // [entry * nb + m]
};

CollisionWorkspace build_workspace(const Grid& grid, int degree, const QuadratureRule& quad,
                                   const ModelParams& params,
                                   std::size_t byte_budget = CollisionWorkspace::default_budget);

/// DG coefficients of Q(g, g), tested against every basis function.
DGField collision_rhs(const DGField& field, const ModelParams& params, const CollisionWorkspace& ws);

/// lambda(xi) = ∫ g(y) |xi - y|^gamma dy at every cell center, evaluated
/// with an n-point Gauss rule per cell.
std::vector<double> loss_frequency(const DGField& field, double gamma, int nodes = 8);

}  // namespace dboltz
