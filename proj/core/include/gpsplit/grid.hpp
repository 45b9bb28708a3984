#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace gpsplit {

enum class BoundaryKind { periodic, dirichlet };

std::string_view to_string(BoundaryKind bc);
BoundaryKind boundary_kind_from_string(std::string_view name);

/// Uniform tensor-product grid on [-L, L]^dim.
///
/// Periodic grids hold N nodes per axis covering [-L, L) with spacing 2L/N and
/// wavenumbers in FFT order, k_j = j*pi/L. Dirichlet grids (1D only) hold the N
/// interior nodes of (-L, L) with spacing 2L/(N+1) and sine-mode wavenumbers
/// k_j = j*pi/(2L), j = 1..N. Boundary values are not stored.
class Grid {
 public:
  Grid(int dim, double half_width, int points, BoundaryKind bc);

  int dim() const noexcept { return dim_; }
  double half_width() const noexcept { return half_width_; }
  int points() const noexcept { return points_; }
  BoundaryKind bc() const noexcept { return bc_; }
  double spacing() const noexcept { return spacing_; }

  /// Total number of nodes, N^dim.
  std::size_t size() const noexcept { return size_; }
  /// Quadrature weight h^dim.
  double cell_volume() const noexcept;

  /// Coordinate of node i along any axis.
  double node(int i) const noexcept;
  std::span<const double> modes() const noexcept { return modes_; }

  bool same_layout(const Grid& other) const noexcept;

 private:
  int dim_;
  double half_width_;
  int points_;
  BoundaryKind bc_;
  double spacing_;
  std::size_t size_;
  std::vector<double> modes_;
};

Grid make_grid(int dim, double half_width, int points, BoundaryKind bc);

}  // namespace gpsplit
