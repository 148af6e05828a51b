#pragma once

#include <cstddef>

namespace geoflow {

/// Doubly periodic node lattice. Node (i, j) sits at (i*hx, j*hy) and is
/// stored at flat index j*nx + i (x fastest).
class Grid2D {
 public:
  /// Validates nx, ny >= 8 and even, Lx, Ly > 0.
  Grid2D(int nx, int ny, double Lx, double Ly);

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  double Lx() const noexcept { return Lx_; }
  double Ly() const noexcept { return Ly_; }
  double hx() const noexcept { return Lx_ / nx_; }
  double hy() const noexcept { return Ly_ / ny_; }
  double min_spacing() const noexcept { return hx() < hy() ? hx() : hy(); }
  double cell_area() const noexcept { return hx() * hy(); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(nx_) * ny_; }

  double x(int i) const noexcept { return i * hx(); }
  double y(int j) const noexcept { return j * hy(); }

  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(j) * nx_ + i;
  }
  /// Periodic wrap of an arbitrary (possibly negative) node index.
  std::size_t wrap(int i, int j) const noexcept {
    i %= nx_;
    j %= ny_;
    if (i < 0) i += nx_;
    if (j < 0) j += ny_;
    return index(i, j);
  }

  friend bool operator==(const Grid2D& a, const Grid2D& b) noexcept {
    return a.nx_ == b.nx_ && a.ny_ == b.ny_ && a.Lx_ == b.Lx_ && a.Ly_ == b.Ly_;
  }

 private:
  int nx_, ny_;
  double Lx_, Ly_;
};

void require_same_grid(const Grid2D& a, const Grid2D& b);

}  // namespace geoflow
