#include "gpsplit/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "gpsplit/errors.hpp"
#include "gpsplit/transforms.hpp"

namespace gpsplit {

double gradient_energy(const Field& u, std::optional<BoundaryValues> boundary) {
  const Grid& grid = u.grid();
  const auto k = grid.modes();
  const int n = grid.points();
  std::vector<Complex> work(u.values().begin(), u.values().end());
  if (grid.bc() == BoundaryKind::periodic) {
    FourierTransform(grid).forward(work);
    double sum = 0.0;
    if (grid.dim() == 1) {
      for (int i = 0; i < n; ++i) sum += k[static_cast<std::size_t>(i)] * k[static_cast<std::size_t>(i)] * std::norm(work[static_cast<std::size_t>(i)]);
    } else {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          sum += (k[static_cast<std::size_t>(i)] * k[static_cast<std::size_t>(i)] + k[static_cast<std::size_t>(j)] * k[static_cast<std::size_t>(j)]) *
                 std::norm(work[static_cast<std::size_t>(i) * n + j]);
    }
    return grid.cell_volume() * sum / static_cast<double>(grid.size());
  }
  // u = r + w with w(+-L) = 0 and r linear, so int r' w' = 0.
  const BoundaryValues bv = boundary.value_or(BoundaryValues{});
  const double half = grid.half_width();
  for (int i = 0; i < n; ++i) work[static_cast<std::size_t>(i)] -= bv.ramp(grid.node(i), half);
  SineTransform(n).forward(work);
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    const double coeff_sq = std::norm(work[static_cast<std::size_t>(j)]) / ((n + 1.0) * (n + 1.0));
    sum += k[static_cast<std::size_t>(j)] * k[static_cast<std::size_t>(j)] * coeff_sq;
  }
  const double slope_sq = std::norm(bv.upper - bv.lower) / (4.0 * half * half);
  return half * sum + 2.0 * half * slope_sq;
}

double energy_GL(const Field& u, const Potential& pot, double t, const PhysParams& params,
                 std::optional<BoundaryValues> boundary) {
  const Grid& grid = u.grid();
  const double w = grid.cell_volume();
  const auto values = u.values();
  double well = 0.0;
  for (auto z : values) {
    const double d = 1.0 - std::norm(z);
    well += d * d;
  }
  double coupling = 0.0;
  if (!is_zero(pot)) {
    const auto v = sample_potential(pot, t, grid);
    for (std::size_t i = 0; i < values.size(); ++i) coupling += v[i] * (1.0 - std::norm(values[i]));
  }
  return params.dispersion() * gradient_energy(u, boundary) +
         0.5 * params.nonlinearity() * w * well + w * coupling;
}

double mass_generalized(const Field& u) {
  double sum = 0.0;
  for (auto z : u.values()) sum += 1.0 - std::norm(z);
  return u.grid().cell_volume() * sum;
}

double energy_source(const Field& u, const Potential& pot, double t) {
  if (!is_time_dependent(pot)) return 0.0;
  const auto rate = sample_potential_rate(pot, t, u.grid());
  const auto values = u.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) sum += rate[i] * (1.0 - std::norm(values[i]));
  return u.grid().cell_volume() * sum;
}

double error_norm(const Field& u, const Field& reference, NormKind kind) {
  if (!u.grid().same_layout(reference.grid())) throw ValidationError("error_norm: grid mismatch");
  return norm(u - reference, kind, BoundaryValues{});
}

double fit_order(std::span<const double> taus, std::span<const double> errors) {
  if (taus.size() != errors.size()) throw ValidationError("fit_order: size mismatch");
  if (taus.size() < 3) throw ValidationError("fit_order needs at least 3 points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (!(taus[i] > 0.0) || !(errors[i] > 0.0))
      throw ValidationError("fit_order requires positive step sizes and errors");
    const double x = std::log(taus[i]);
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom <= 0.0) throw ValidationError("fit_order needs distinct step sizes");
  return (n * sxy - sx * sy) / denom;
}

VortexReport vortex_windings(const Field& u, std::optional<double> density_threshold) {
  const Grid& grid = u.grid();
  if (grid.dim() != 2 || grid.bc() != BoundaryKind::periodic)
    throw ValidationError("vortex detection needs a periodic 2D field");
  const int n = grid.points();
  const double h = grid.spacing();
  const double two_pi = 2.0 * std::numbers::pi;
  auto at = [&](int i, int j) { return u[static_cast<std::size_t>(i % n) * n + static_cast<std::size_t>(j % n)]; };
  auto wrap = [&](double x) { return x >= grid.half_width() ? x - 2.0 * grid.half_width() : x; };

  VortexReport report;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Complex corners[4] = {at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)};
      if (corners[0] == 0.0 || corners[1] == 0.0 || corners[2] == 0.0 || corners[3] == 0.0) {
        ++report.indeterminate;
        continue;
      }
      double circulation = 0.0;
      for (int e = 0; e < 4; ++e) circulation += std::arg(corners[(e + 1) % 4] * std::conj(corners[e]));
      const int charge = static_cast<int>(std::lround(circulation / two_pi));
      if (charge == 0) continue;
      report.net_winding += charge;
      double density = 0.0;
      for (auto z : corners) density += 0.25 * std::norm(z);
      if (density_threshold && density > *density_threshold) continue;
      report.events.push_back({i, j, charge, density, wrap(grid.node(i) + 0.5 * h), wrap(grid.node(j) + 0.5 * h)});
    }
  }
  return report;
}

namespace {
void put_double(std::ostream& os, double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  os << buf;
}
}  // namespace

void write_diagnostics_header(std::ostream& os) {
  os << "t,energy,mass,err_X2,norm_L2,norm_H2,vortex_count,net_winding\n";
}

void write_diagnostics_row(std::ostream& os, const DiagRow& row) {
  put_double(os, row.t);
  os << ',';
  put_double(os, row.energy);
  os << ',';
  put_double(os, row.mass);
  os << ',';
  if (row.err_x2)
    put_double(os, *row.err_x2);
  else
    os << "nan";
  os << ',';
  put_double(os, row.norm_l2);
  os << ',';
  put_double(os, row.norm_h2);
  os << ',' << row.vortex_count << ',' << row.net_winding << '\n';
}

void write_diagnostics_csv(std::ostream& os, std::span<const DiagRow> rows) {
  write_diagnostics_header(os);
  for (const auto& row : rows) write_diagnostics_row(os, row);
}

}  // namespace gpsplit
