#pragma once

#include <optional>
#include <vector>

#include "gpsplit/field.hpp"
#include "gpsplit/potential.hpp"

namespace gpsplit {

struct MinimizeConfig {
  double grad_tol = 1e-8;
  int max_iters = 5000;
  int lbfgs_memory = 10;
  double armijo_c1 = 1e-4;
  double backtrack_factor = 0.5;
  /// Starting point; u = 1 when absent.
  std::optional<Field> initial_guess;

  void validate() const;
};

struct EnergyGradient {
  double energy = 0.0;
  /// G = 2(-(1/(2m)) Lap u - (1/eps^2)(1-|u|^2) u - V u), so that
  /// dE(u)[delta] = h^dim Re sum conj(G) delta.
  Field gradient;
};

/// Energy and first variation with V frozen at t = 0. Periodic grids only.
EnergyGradient energy_and_gradient(const Field& u, const Potential& pot, const PhysParams& params);

struct MinimizeResult {
  explicit MinimizeResult(Field start) : minimizer(std::move(start)) {}

  Field minimizer;
  bool converged = false;
  int iterations = 0;
  double energy = 0.0;
  double gradient_norm = 0.0;
  double initial_gradient_norm = 0.0;
  /// Energy after every accepted iteration (first entry is the initial guess).
  std::vector<double> energy_history;
};

/// L-BFGS with Armijo backtracking over the real and imaginary parts. The
/// result's global phase is rotated so that the spatial mean is real positive.
MinimizeResult minimize(const Grid& grid, const Potential& pot, const PhysParams& params,
                        const MinimizeConfig& cfg = {});

}  // namespace gpsplit
