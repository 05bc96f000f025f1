#include "dboltz/collision.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <tuple>

#include "dboltz/errors.hpp"

namespace dboltz {

namespace {

constexpr int kChunks = 8;

// Position of t = a x + b y measured in cells from the left edge of cell j,
// for x at local zx in cell j + d and y at local zy in cell j.
double target_position(double a, int d, double zx, double zy) {
  const double b = 1.0 - a;
  return a * d + 0.5 * (a * (1.0 + zx) + b * (1.0 + zy));
}

// Splits a target position into (cell offset, local coordinate). The target
// is a convex combination of the sources, so it must land between them.
std::pair<int, double> split_target(double s, int d) {
  const int lo = std::min(0, d);
  const int hi = std::max(0, d);
  int cell = static_cast<int>(std::floor(s));
  constexpr double slack = 1e-9;
  if (s < lo - slack || s > hi + 1 + slack) {
    throw std::logic_error("collision target left the span of its source cells");
  }
  cell = std::clamp(cell, lo, hi);
  const double z = std::clamp(2.0 * (s - cell) - 1.0, -1.0, 1.0);
  return {cell, z};
}

template <int NB>
void contract(int n, int d, int e_begin, int e_end, const std::int32_t* sx, const std::int32_t* sy,
              const std::int32_t* offset, const double* weight, const double* target_basis,
              int nb_runtime, const double* values, double* gain, double* loss) {
  const int nb = NB > 0 ? NB : nb_runtime;
  const int j0 = std::max(0, -d);
  const int j1 = std::min(n, n - d);
  for (int e = e_begin; e < e_end; ++e) {
    const double k = weight[e];
    const double* __restrict gx = values + static_cast<std::ptrdiff_t>(sx[e]) * n + d;
    const double* __restrict gy = values + static_cast<std::ptrdiff_t>(sy[e]) * n;
    double* __restrict acc = loss + static_cast<std::ptrdiff_t>(sx[e]) * n + d;
    const double* pt = target_basis + static_cast<std::ptrdiff_t>(e) * nb;
    const int off = offset[e];
    if constexpr (NB == 1) {
      double* __restrict o0 = gain + off;
      const double p0 = pt[0];
#pragma GCC ivdep
      for (int j = j0; j < j1; ++j) {
        const double prod = k * gy[j];
        acc[j] += prod;
        o0[j] += prod * gx[j] * p0;
      }
    } else if constexpr (NB == 2) {
      double* __restrict o0 = gain + off;
      double* __restrict o1 = gain + n + off;
      const double p0 = pt[0], p1 = pt[1];
#pragma GCC ivdep
      for (int j = j0; j < j1; ++j) {
        const double prod = k * gy[j];
        acc[j] += prod;
        const double pg = prod * gx[j];
        o0[j] += pg * p0;
        o1[j] += pg * p1;
      }
    } else if constexpr (NB == 3) {
      double* __restrict o0 = gain + off;
      double* __restrict o1 = gain + n + off;
      double* __restrict o2 = gain + 2 * n + off;
      const double p0 = pt[0], p1 = pt[1], p2 = pt[2];
#pragma GCC ivdep
      for (int j = j0; j < j1; ++j) {
        const double prod = k * gy[j];
        acc[j] += prod;
        const double pg = prod * gx[j];
        o0[j] += pg * p0;
        o1[j] += pg * p1;
        o2[j] += pg * p2;
      }
    } else {
#pragma GCC ivdep
      for (int j = j0; j < j1; ++j) {
        const double prod = k * gy[j];
        acc[j] += prod;
        const double pg = prod * gx[j];
        for (int m = 0; m < nb; ++m) gain[m * n + off + j] += pg * pt[m];
      }
    }
  }
}

}  // namespace

CollisionWorkspace::CollisionWorkspace(const Grid& grid, int degree, const QuadratureRule& quad,
                                       const ModelParams& params, std::size_t byte_budget)
    : grid_(grid), degree_(degree), quad_(quad), gamma_(params.gamma()), a_(params.a()) {
  if (degree < 0) throw InvalidArgument("polynomial degree must be >= 0, got " + std::to_string(degree));
  if (quad.size() == 0) throw InvalidArgument("empty quadrature rule");
  const int n = grid.n_cells();
  const int nq = quad.size();
  const std::size_t need = estimate_bytes(n, degree, nq);
  if (need > byte_budget) throw BudgetExceeded(need, byte_budget);

  for (int q = 0; q < nq; ++q) add_point(quad.nodes[q]);

  const double half_h = 0.5 * grid.cell_width();
  const double jac = half_h * half_h;
  d_begin_.reserve(2 * static_cast<std::size_t>(n));
  for (int d = -(n - 1); d <= n - 1; ++d) {
    d_begin_.push_back(static_cast<std::int32_t>(weight_.size()));
    if (d != 0) {
      for (int q = 0; q < nq; ++q) {
        for (int r = 0; r < nq; ++r) {
          add_entry(d, q, r, quad.nodes[q], quad.nodes[r], jac * quad.weights[q] * quad.weights[r]);
        }
      }
      continue;
    }
    // Same-cell pairs: for each outer node, split the inner integral at the
    // kink. Half the weight goes to each ordering of (x, y).
    for (int q = 0; q < nq; ++q) {
      const double eta = quad.nodes[q];
      const double pieces[2][2] = {{-1.0, eta}, {eta, 1.0}};
      for (const auto& piece : pieces) {
        const double mid = 0.5 * (piece[0] + piece[1]);
        const double half = 0.5 * (piece[1] - piece[0]);
        for (int r = 0; r < nq; ++r) {
          const double z = mid + half * quad.nodes[r];
          const int s = add_point(z);
          const double w = 0.5 * jac * quad.weights[q] * half * quad.weights[r];
          add_entry(0, q, s, eta, z, w);
          add_entry(0, s, q, z, eta, w);
        }
      }
    }
  }
  d_begin_.push_back(static_cast<std::int32_t>(weight_.size()));
}

int CollisionWorkspace::add_point(double z) {
  points_.push_back(z);
  const int nb = degree_ + 1;
  const std::size_t base = point_basis_.size();
  point_basis_.resize(base + nb);
  legendre_values(z, std::span<double>(point_basis_).subspan(base, nb));
  return static_cast<int>(points_.size()) - 1;
}

void CollisionWorkspace::add_entry(int d, int sx, int sy, double zx, double zy, double weight) {
  const double h = grid_.cell_width();
  const double dist = std::abs(h * (d + 0.5 * (zx - zy)));
  const double kernel = gamma_ == 0.0 ? 1.0 : std::pow(dist, gamma_);
  const auto [cell, z] = split_target(target_position(a_, d, zx, zy), d);
  sx_.push_back(sx);
  sy_.push_back(sy);
  offset_.push_back(cell);
  weight_.push_back(weight * kernel);
  const int nb = degree_ + 1;
  const std::size_t base = target_basis_.size();
  target_basis_.resize(base + nb);
  legendre_values(z, std::span<double>(target_basis_).subspan(base, nb));
}

PairEntry CollisionWorkspace::entry(int i, int j, int q, int r) const {
  const int n = grid_.n_cells();
  const int nq = quad_.size();
  if (i < 0 || i >= n || j < 0 || j >= n || q < 0 || q >= nq || r < 0 || r >= nq) {
    throw InvalidArgument("workspace entry index out of range");
  }
  PairEntry e;
  e.x = grid_.to_global(i, quad_.nodes[q]);
  e.y = grid_.to_global(j, quad_.nodes[r]);
  const double dist = std::abs(e.x - e.y);
  e.weight = quad_.weights[q] * quad_.weights[r] * (gamma_ == 0.0 ? 1.0 : std::pow(dist, gamma_));
  const int nb = degree_ + 1;
  const int d = i - j;
  const auto [ca, za] = split_target(target_position(a_, d, quad_.nodes[q], quad_.nodes[r]), d);
  // b x + a y is the a-map of the swapped pair, seen from cell i.
  const auto [cb, zb] = split_target(target_position(a_, -d, quad_.nodes[r], quad_.nodes[q]), -d);
  e.cell_a = j + ca;
  e.cell_b = i + cb;
  e.target_a = a_ * e.x + (1.0 - a_) * e.y;
  e.target_b = (1.0 - a_) * e.x + a_ * e.y;
  e.basis_a.resize(nb);
  e.basis_b.resize(nb);
  legendre_values(za, e.basis_a);
  legendre_values(zb, e.basis_b);
  return e;
}

std::size_t CollisionWorkspace::estimate_bytes(int n_cells, int degree, int n_nodes) {
  const std::size_t nq = static_cast<std::size_t>(n_nodes);
  const std::size_t entries = (2 * static_cast<std::size_t>(n_cells) - 2) * nq * nq + 4 * nq * nq;
  const std::size_t per_entry = 3 * sizeof(std::int32_t) + sizeof(double) * (2 + static_cast<std::size_t>(degree));
  return entries * per_entry + 2 * static_cast<std::size_t>(n_cells) * sizeof(std::int32_t);
}

std::size_t CollisionWorkspace::table_bytes() const noexcept {
  return sx_.size() * sizeof(std::int32_t) * 3 + weight_.size() * sizeof(double) +
         target_basis_.size() * sizeof(double) + d_begin_.size() * sizeof(std::int32_t) +
         (points_.size() + point_basis_.size()) * sizeof(double);
}

void CollisionWorkspace::set_threads(int threads) {
  if (threads < 1) throw InvalidArgument("thread count must be >= 1");
  threads_ = threads;
}

CollisionWorkspace build_workspace(const Grid& grid, int degree, const QuadratureRule& quad,
                                   const ModelParams& params, std::size_t byte_budget) {
  return CollisionWorkspace(grid, degree, quad, params, byte_budget);
}

DGField collision_rhs(const DGField& field, const ModelParams& params, const CollisionWorkspace& ws) {
  if (field.grid() != ws.grid_ || field.degree() != ws.degree_) {
    throw InvalidArgument("field and collision workspace use different grids or degrees");
  }
  if (params.gamma() != ws.gamma_ || params.a() != ws.a_) {
    throw InvalidArgument("collision workspace was built for different model parameters");
  }
  const int n = field.n_cells();
  const int nb = field.n_basis();
  const int np = static_cast<int>(ws.points_.size());

  // Field values at every source point, point-major so that the inner loop
  // over cells is contiguous.
  std::vector<double> values(static_cast<std::size_t>(np) * n);
  for (int s = 0; s < np; ++s) {
    const double* p = &ws.point_basis_[static_cast<std::size_t>(s) * nb];
    for (int j = 0; j < n; ++j) {
      const auto c = field.cell(j);
      double v = 0.0;
      for (int m = 0; m < nb; ++m) v += c[m] * p[m];
      values[static_cast<std::size_t>(s) * n + j] = v;
    }
  }

  const int n_d = 2 * n - 1;
  const int chunks = std::min(kChunks, n_d);
  const std::size_t gain_size = static_cast<std::size_t>(nb) * n;
  const std::size_t loss_size = static_cast<std::size_t>(np) * n;
  auto run_chunk = [&](int c, double* gain, double* loss) {
    std::fill(gain, gain + gain_size, 0.0);
    std::fill(loss, loss + loss_size, 0.0);
    const int d_lo = static_cast<int>(static_cast<long>(c) * n_d / chunks);
    const int d_hi = static_cast<int>(static_cast<long>(c + 1) * n_d / chunks);
    for (int di = d_lo; di < d_hi; ++di) {
      const int d = di - (n - 1);
      const int e0 = ws.d_begin_[di];
      const int e1 = ws.d_begin_[di + 1];
      const auto args = std::make_tuple(n, d, e0, e1, ws.sx_.data(), ws.sy_.data(), ws.offset_.data(),
                                        ws.weight_.data(), ws.target_basis_.data(), nb, values.data(), gain, loss);
      switch (nb) {
        case 1: std::apply(contract<1>, args); break;
        case 2: std::apply(contract<2>, args); break;
        case 3: std::apply(contract<3>, args); break;
        default: std::apply(contract<0>, args); break;
      }
    }
  };

  std::vector<double> gain(gain_size, 0.0);
  std::vector<double> loss(loss_size, 0.0);
  const int threads = std::min(ws.threads_, chunks);
  if (threads <= 1) {
    std::vector<double> cg(gain_size);
    std::vector<double> cl(loss_size);
    for (int c = 0; c < chunks; ++c) {
      run_chunk(c, cg.data(), cl.data());
      for (std::size_t i = 0; i < gain_size; ++i) gain[i] += cg[i];
      for (std::size_t i = 0; i < loss_size; ++i) loss[i] += cl[i];
    }
  } else {
    std::vector<std::vector<double>> cg(chunks, std::vector<double>(gain_size));
    std::vector<std::vector<double>> cl(chunks, std::vector<double>(loss_size));
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (int c = t; c < chunks; c += threads) run_chunk(c, cg[c].data(), cl[c].data());
      });
    }
    for (auto& th : pool) th.join();
    for (int c = 0; c < chunks; ++c) {
      for (std::size_t i = 0; i < gain_size; ++i) gain[i] += cg[c][i];
      for (std::size_t i = 0; i < loss_size; ++i) loss[i] += cl[c][i];
    }
  }

  DGField out(field.grid(), field.degree());
  const double h = field.grid().cell_width();
  for (int i = 0; i < n; ++i) {
    for (int m = 0; m < nb; ++m) {
      double lost = 0.0;
      for (int s = 0; s < np; ++s) {
        const std::size_t at = static_cast<std::size_t>(s) * n + i;
        lost += values[at] * loss[at] * ws.point_basis_[static_cast<std::size_t>(s) * nb + m];
      }
      out.coeff(i, m) = (2.0 * m + 1.0) / h * (gain[static_cast<std::size_t>(m) * n + i] - lost);
    }
  }
  return out;
}

std::vector<double> loss_frequency(const DGField& field, double gamma, int nodes) {
  const QuadratureRule rule = gauss_legendre(nodes);
  const Grid& g = field.grid();
  const int n = g.n_cells();
  const double h = g.cell_width();
  const std::vector<double> vals = node_values(field, rule);
  // |center_i - y_{j,r}| depends on i - j and r only.
  std::vector<double> kernel(static_cast<std::size_t>(2 * n - 1) * nodes);
  for (int d = -(n - 1); d <= n - 1; ++d) {
    for (int r = 0; r < nodes; ++r) {
      const double dist = std::abs(h * (d - 0.5 * rule.nodes[r]));
      kernel[static_cast<std::size_t>(d + n - 1) * nodes + r] =
          0.5 * h * rule.weights[r] * (gamma == 0.0 ? 1.0 : std::pow(dist, gamma));
    }
  }
  std::vector<double> lambda(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      const double* k = &kernel[static_cast<std::size_t>(i - j + n - 1) * nodes];
      const double* v = &vals[static_cast<std::size_t>(j) * nodes];
      for (int r = 0; r < nodes; ++r) sum += k[r] * v[r];
    }
    lambda[i] = sum;
  }
  return lambda;
}

}  // namespace dboltz
