#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "gpsplit/field.hpp"
#include "gpsplit/potential.hpp"

namespace gpsplit {

/// One diagnostics record. CSV column order:
/// t, energy, mass, err_X2, norm_L2, norm_H2, vortex_count, net_winding.
struct DiagRow {
  double t = 0.0;
  double energy = 0.0;
  double mass = 0.0;
  std::optional<double> err_x2;
  double norm_l2 = 0.0;
  double norm_h2 = 0.0;
  int vortex_count = 0;
  int net_winding = 0;
};

/// int |grad u|^2 with the kinetic term native to the grid: Fourier
/// differentiation on periodic grids; on Dirichlet grids the sine-series
/// derivative of u - r plus the constant ramp slope contribution.
double gradient_energy(const Field& u, std::optional<BoundaryValues> boundary = std::nullopt);

/// Ginzburg-Landau energy
///   (1/(2m)) int |grad u|^2 + (1/(2 eps^2)) int (1-|u|^2)^2 + int V(t)(1-|u|^2).
double energy_GL(const Field& u, const Potential& pot, double t, const PhysParams& params,
                 std::optional<BoundaryValues> boundary = std::nullopt);

/// Generalized mass int (1 - |u|^2) as a plain h^dim-weighted lattice sum.
double mass_generalized(const Field& u);

/// int dV/dt (1 - |u|^2), the source term of the energy balance law.
double energy_source(const Field& u, const Potential& pot, double t);

/// norm(u - reference, kind). Differences on Dirichlet grids have zero
/// boundary values.
double error_norm(const Field& u, const Field& reference, NormKind kind);

/// Least-squares slope of log(error) against log(tau). Needs >= 3 positive
/// pairs.
double fit_order(std::span<const double> taus, std::span<const double> errors);

struct VortexEvent {
  int i = 0;
  int j = 0;
  int charge = 0;
  double density = 0.0;
  /// Plaquette centre coordinates.
  double x = 0.0;
  double y = 0.0;
};

struct VortexReport {
  std::vector<VortexEvent> events;
  int net_winding = 0;
  /// Plaquettes skipped because a corner value was exactly zero.
  int indeterminate = 0;
};

/// Phase winding around every plaquette of a periodic 2D field. Cells whose
/// mean corner density exceeds `density_threshold` are dropped from the
/// report (all nonzero windings are kept when it is absent).
VortexReport vortex_windings(const Field& u,
                             std::optional<double> density_threshold = std::nullopt);

void write_diagnostics_header(std::ostream& os);
void write_diagnostics_row(std::ostream& os, const DiagRow& row);
void write_diagnostics_csv(std::ostream& os, std::span<const DiagRow> rows);

}  // namespace gpsplit
