#include "gpsplit/field.hpp"

#include <algorithm>
#include <cmath>

#include "gpsplit/errors.hpp"
#include "gpsplit/transforms.hpp"

namespace gpsplit {

Field::Field(Grid grid) : grid_(std::move(grid)), values_(grid_.size()) {}

Field::Field(Grid grid, std::vector<Complex> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw ValidationError("field size does not match grid");
}

Field Field::constant(const Grid& grid, Complex value) {
  return Field(grid, std::vector<Complex>(grid.size(), value));
}

Field Field::sample(const Grid& grid, const std::function<Complex(double, double)>& f) {
  Field out(grid);
  const int n = grid.points();
  if (grid.dim() == 1) {
    for (int i = 0; i < n; ++i) out.values_[static_cast<std::size_t>(i)] = f(grid.node(i), 0.0);
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out.values_[static_cast<std::size_t>(i) * n + j] = f(grid.node(i), grid.node(j));
  }
  return out;
}

Field& Field::operator+=(const Field& other) {
  if (!grid_.same_layout(other.grid_)) throw ValidationError("field grid mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  if (!grid_.same_layout(other.grid_)) throw ValidationError("field grid mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Field& Field::operator*=(Complex s) noexcept {
  for (auto& z : values_) z *= s;
  return *this;
}

bool Field::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(),
                     [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

double Field::max_modulus() const noexcept {
  double m = 0.0;
  for (auto z : values_) m = std::max(m, std::abs(z));
  return m;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(Complex s, Field a) { return a *= s; }

namespace {

Field spectral_derivative(const Field& f, MultiIndex alpha) {
  const Grid& grid = f.grid();
  const FourierTransform fft(grid);
  Field out = f;
  auto data = out.values();
  fft.forward(data);
  const auto k = grid.modes();
  const int n = grid.points();
  auto factor = [](double kk, int order) {
    Complex ik{0.0, kk};
    Complex r{1.0, 0.0};
    for (int p = 0; p < order; ++p) r *= ik;
    return r;
  };
  if (grid.dim() == 1) {
    for (int i = 0; i < n; ++i) data[static_cast<std::size_t>(i)] *= factor(k[static_cast<std::size_t>(i)], alpha.x);
  } else {
    for (int i = 0; i < n; ++i) {
      const Complex fx = factor(k[static_cast<std::size_t>(i)], alpha.x);
      for (int j = 0; j < n; ++j)
        data[static_cast<std::size_t>(i) * n + j] *= fx * factor(k[static_cast<std::size_t>(j)], alpha.y);
    }
  }
  fft.inverse(data);
  return out;
}

Field finite_difference(const Field& f, int order, const BoundaryValues& bv) {
  const Grid& grid = f.grid();
  const int n = grid.points();
  const double h = grid.spacing();
  auto in = f.values();
  auto at = [&](int i) -> Complex {
    if (i < 0) return bv.lower;
    if (i >= n) return bv.upper;
    return in[static_cast<std::size_t>(i)];
  };
  Field out(grid);
  auto o = out.values();
  for (int i = 0; i < n; ++i) {
    o[static_cast<std::size_t>(i)] = order == 1 ? (at(i + 1) - at(i - 1)) / (2.0 * h)
                                                : (at(i + 1) - 2.0 * at(i) + at(i - 1)) / (h * h);
  }
  return out;
}

}  // namespace

Field derivative(const Field& f, MultiIndex alpha, std::optional<BoundaryValues> boundary) {
  if (alpha.x < 0 || alpha.y < 0 || alpha.order() < 1 || alpha.order() > 2)
    throw ValidationError("derivative order must satisfy 1 <= |alpha| <= 2");
  const Grid& grid = f.grid();
  if (grid.dim() == 1 && alpha.y != 0)
    throw ValidationError("1D field has no second axis to differentiate");
  if (grid.bc() == BoundaryKind::periodic) return spectral_derivative(f, alpha);
  return finite_difference(f, alpha.x, boundary.value_or(BoundaryValues{}));
}

std::vector<MultiIndex> multi_indices(int dim, int max_order) {
  std::vector<MultiIndex> out;
  for (int order = 1; order <= max_order; ++order) {
    if (dim == 1) {
      out.push_back({order, 0});
    } else {
      for (int x = order; x >= 0; --x) out.push_back({x, order - x});
    }
  }
  return out;
}

double l2_norm(std::span<const Complex> values, double cell_volume) {
  double sum = 0.0;
  for (auto z : values) sum += std::norm(z);
  return std::sqrt(cell_volume * sum);
}

double norm(const Field& f, NormKind kind, std::optional<BoundaryValues> boundary) {
  const Grid& grid = f.grid();
  const double w = grid.cell_volume();
  switch (kind) {
    case NormKind::L2:
      return l2_norm(f.values(), w);
    case NormKind::Linf:
      return f.max_modulus();
    case NormKind::H1:
    case NormKind::H2: {
      const int order = kind == NormKind::H1 ? 1 : 2;
      double sum = std::pow(l2_norm(f.values(), w), 2);
      for (auto alpha : multi_indices(grid.dim(), order))
        sum += std::pow(l2_norm(derivative(f, alpha, boundary).values(), w), 2);
      return std::sqrt(sum);
    }
    case NormKind::X2: {
      double sum = f.max_modulus();
      for (auto alpha : multi_indices(grid.dim(), 2))
        sum += l2_norm(derivative(f, alpha, boundary).values(), w);
      return sum;
    }
  }
  return 0.0;
}

}  // namespace gpsplit
