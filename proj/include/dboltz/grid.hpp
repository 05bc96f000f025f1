#pragma once

namespace dboltz {

/// Uniform mesh of [-L, L] with N cells. Edge j (0 <= j <= N) sits at
/// L (2j - N) / N, so edges are symmetric about 0 bit for bit.
class Grid {
 public:
  Grid(double half_width, int n_cells);

  double half_width() const noexcept { return half_width_; }
  int n_cells() const noexcept { return n_cells_; }
  double cell_width() const noexcept { return width_; }

  double edge(int j) const noexcept;
  double center(int j) const noexcept { return 0.5 * (edge(j) + edge(j + 1)); }

  /// Cell whose half-open interval [edge(j), edge(j+1)) holds xi; xi == L maps
  /// to the last cell. Throws OutOfDomain outside [-L, L].
  int locate(double xi) const;

  /// Local coordinate in [-1, 1] of xi relative to cell j.
  double to_local(int j, double xi) const noexcept { return 2.0 * (xi - center(j)) / width_; }
  double to_global(int j, double z) const noexcept { return center(j) + 0.5 * width_ * z; }

  bool contains(double xi) const noexcept { return xi >= -half_width_ && xi <= half_width_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  double half_width_;
  int n_cells_;
  double width_;
};

}  // namespace dboltz
