#include "dboltz/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dboltz/errors.hpp"

namespace dboltz {

Grid::Grid(double half_width, int n_cells)
    : half_width_(half_width), n_cells_(n_cells), width_(0.0) {
  if (!(std::isfinite(half_width) && half_width > 0.0)) {
    throw InvalidArgument("grid half width must be > 0");
  }
  if (n_cells <= 0) {
    throw InvalidArgument("grid needs at least one cell, got " + std::to_string(n_cells));
  }
  width_ = 2.0 * half_width / n_cells;
}

double Grid::edge(int j) const noexcept {
  return half_width_ * static_cast<double>(2 * j - n_cells_) / n_cells_;
}

int Grid::locate(double xi) const {
  if (!contains(xi)) throw OutOfDomain(xi, half_width_);
  int j = static_cast<int>(std::floor((xi + half_width_) / width_));
  j = std::clamp(j, 0, n_cells_ - 1);
  // floor() on the scaled value can land one cell off near an edge.
  if (xi < edge(j) && j > 0) --j;
  if (xi >= edge(j + 1) && j + 1 < n_cells_) ++j;
  return j;
}

}  // namespace dboltz
