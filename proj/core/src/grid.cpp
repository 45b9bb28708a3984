#include "gpsplit/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gpsplit/errors.hpp"

namespace gpsplit {

std::string_view to_string(BoundaryKind bc) {
  return bc == BoundaryKind::periodic ? "periodic" : "dirichlet";
}

BoundaryKind boundary_kind_from_string(std::string_view name) {
  if (name == "periodic") return BoundaryKind::periodic;
  if (name == "dirichlet") return BoundaryKind::dirichlet;
  throw ValidationError("unknown boundary condition '" + std::string(name) + "'");
}

Grid::Grid(int dim, double half_width, int points, BoundaryKind bc)
    : dim_(dim), half_width_(half_width), points_(points), bc_(bc) {
  if (dim != 1 && dim != 2) throw ValidationError("grid dimension must be 1 or 2");
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw ValidationError("grid half-width L must be positive");
  if (points < 8) throw ValidationError("grid needs at least 8 points per axis");
  if (bc == BoundaryKind::dirichlet && dim != 1)
    throw ValidationError("Dirichlet grids are one-dimensional only");

  size_ = dim == 1 ? static_cast<std::size_t>(points)
                   : static_cast<std::size_t>(points) * static_cast<std::size_t>(points);
  modes_.resize(static_cast<std::size_t>(points));
  if (bc == BoundaryKind::periodic) {
    spacing_ = 2.0 * half_width / points;
    const double base = std::numbers::pi / half_width;
    for (int j = 0; j < points; ++j) {
      const int index = j < (points + 1) / 2 ? j : j - points;
      modes_[static_cast<std::size_t>(j)] = base * index;
    }
  } else {
    spacing_ = 2.0 * half_width / (points + 1);
    const double base = std::numbers::pi / (2.0 * half_width);
    for (int j = 0; j < points; ++j) modes_[static_cast<std::size_t>(j)] = base * (j + 1);
  }
}

double Grid::cell_volume() const noexcept { return dim_ == 1 ? spacing_ : spacing_ * spacing_; }

double Grid::node(int i) const noexcept {
  return bc_ == BoundaryKind::periodic ? -half_width_ + i * spacing_
                                       : -half_width_ + (i + 1) * spacing_;
}

bool Grid::same_layout(const Grid& other) const noexcept {
  return dim_ == other.dim_ && points_ == other.points_ && bc_ == other.bc_ &&
         half_width_ == other.half_width_;
}

Grid make_grid(int dim, double half_width, int points, BoundaryKind bc) {
  return Grid(dim, half_width, points, bc);
}

}  // namespace gpsplit
