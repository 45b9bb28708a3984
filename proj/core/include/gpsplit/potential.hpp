#pragma once

#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "gpsplit/field.hpp"

namespace gpsplit {

/// Nonlinearity strength 1/eps^2 and Laplacian scaling 1/(2m). The defaults
/// give i u_t = Lap u + (1 - |u|^2) u + V u.
struct PhysParams {
  double eps = 1.0;
  double mass = 0.5;

  double nonlinearity() const noexcept { return 1.0 / (eps * eps); }
  double dispersion() const noexcept { return 1.0 / (2.0 * mass); }
  void validate() const;
};

struct ZeroPotential {};

struct StaticGaussian {
  double amplitude = 0.0;
  double gamma = 1.0;
  double center_x = 0.0;
  double center_y = 0.0;
};

/// V0 exp(-gamma^2/2 ((x1 - a t)^2 + x2^2))
struct MovingGaussian {
  double amplitude = 50.0;
  double gamma = 10.0;
  double speed = 1.0;
};

/// V0 exp(-gamma^2/2 ((x1 - r0 cos(a t))^2 + (x2 - r0 sin(a t))^2))
struct RotatingGaussian {
  double amplitude = 50.0;
  double gamma = 10.0;
  double angular_speed = 1.0;
  double radius = 0.5;
};

using Potential = std::variant<ZeroPotential, StaticGaussian, MovingGaussian, RotatingGaussian>;

bool is_zero(const Potential& pot) noexcept;
bool is_time_dependent(const Potential& pot) noexcept;

/// Point evaluation; x2 is ignored (taken as 0) on 1D grids by the callers.
double potential_value(const Potential& pot, double t, double x1, double x2) noexcept;
/// Partial derivative in time at a point.
double potential_rate(const Potential& pot, double t, double x1, double x2) noexcept;

/// Real-valued field V(t, .) (imaginary parts exactly zero).
Field eval_potential(const Potential& pot, double t, const Grid& grid);
std::vector<double> sample_potential(const Potential& pot, double t, const Grid& grid);
std::vector<double> sample_potential_rate(const Potential& pot, double t, const Grid& grid);

enum class QuadratureRule { exact, midpoint, left, gauss2 };

std::string_view to_string(QuadratureRule rule);
QuadratureRule quadrature_rule_from_string(std::string_view name);

/// Approximates int_{t0}^{t0+tau} V(s, .) ds at every node into `out`.
/// `exact` is only valid for time-independent kinds. A negative tau integrates
/// backwards.
void integrate_potential(const Potential& pot, double t0, double tau, QuadratureRule rule,
                         const Grid& grid, std::span<double> out);

Field potential_time_integral(const Potential& pot, double t0, double tau, QuadratureRule rule,
                              const Grid& grid);

}  // namespace gpsplit
