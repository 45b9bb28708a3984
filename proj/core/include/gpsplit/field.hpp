#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gpsplit/grid.hpp"

namespace gpsplit {

using Complex = std::complex<double>;

/// Fixed values of u at x = -L and x = +L on a Dirichlet grid.
struct BoundaryValues {
  Complex lower;
  Complex upper;

  /// Harmonic ramp between the two constants evaluated at x.
  Complex ramp(double x, double half_width) const noexcept {
    return lower + (upper - lower) * ((x + half_width) / (2.0 * half_width));
  }
};

/// Complex samples on a Grid, row-major over axes (x1 slowest).
class Field {
 public:
  explicit Field(Grid grid);
  Field(Grid grid, std::vector<Complex> values);

  static Field constant(const Grid& grid, Complex value);
  /// Samples f(x1, x2) at every node; x2 is 0 on 1D grids.
  static Field sample(const Grid& grid, const std::function<Complex(double, double)>& f);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<Complex> values() noexcept { return values_; }
  std::span<const Complex> values() const noexcept { return values_; }

  Complex& operator[](std::size_t i) noexcept { return values_[i]; }
  const Complex& operator[](std::size_t i) const noexcept { return values_[i]; }

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(Complex s) noexcept;

  bool all_finite() const noexcept;
  double max_modulus() const noexcept;

 private:
  Grid grid_;
  std::vector<Complex> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(Complex s, Field a);

/// Partial derivative order per axis; |alpha| = x + y.
struct MultiIndex {
  int x = 0;
  int y = 0;
  int order() const noexcept { return x + y; }
};

/// Spectral differentiation on periodic grids (Fourier coefficients times
/// (ik)^alpha). Second-order centred differences on Dirichlet grids, closing
/// the stencil with `boundary` (homogeneous when absent).
Field derivative(const Field& f, MultiIndex alpha,
                 std::optional<BoundaryValues> boundary = std::nullopt);

/// Multi-indices with 1 <= |alpha| <= max_order for the grid's dimension.
std::vector<MultiIndex> multi_indices(int dim, int max_order);

enum class NormKind { L2, Linf, H1, H2, X2 };

/// Discrete norms with quadrature weight h^dim. H^k is the root of the sum of
/// squared L2 norms over |alpha| <= k; X2 is Linf plus the L2 norms of every
/// derivative with 1 <= |alpha| <= 2.
double norm(const Field& f, NormKind kind,
            std::optional<BoundaryValues> boundary = std::nullopt);

/// sqrt(h^dim * sum |f|^2) for raw samples.
double l2_norm(std::span<const Complex> values, double cell_volume);

}  // namespace gpsplit
