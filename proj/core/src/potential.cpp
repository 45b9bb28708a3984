#include "gpsplit/potential.hpp"

#include <cmath>
#include <string>

#include "gpsplit/errors.hpp"

namespace gpsplit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double gaussian(double amplitude, double gamma, double dx, double dy) {
  return amplitude * std::exp(-0.5 * gamma * gamma * (dx * dx + dy * dy));
}

template <class F>
void for_each_node(const Grid& grid, std::span<double> out, F&& f) {
  const int n = grid.points();
  if (grid.dim() == 1) {
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = f(grid.node(i), 0.0);
  } else {
    for (int i = 0; i < n; ++i) {
      const double x = grid.node(i);
      for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(i) * n + j] = f(x, grid.node(j));
    }
  }
}

}  // namespace

void PhysParams::validate() const {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ValidationError("eps must be positive");
  if (!(mass > 0.0) || !std::isfinite(mass)) throw ValidationError("mass m must be positive");
}

bool is_zero(const Potential& pot) noexcept {
  if (std::holds_alternative<ZeroPotential>(pot)) return true;
  return std::visit(overloaded{
                        [](const ZeroPotential&) { return true; },
                        [](const auto& g) { return g.amplitude == 0.0; },
                    },
                    pot);
}

bool is_time_dependent(const Potential& pot) noexcept {
  return (std::holds_alternative<MovingGaussian>(pot) || std::holds_alternative<RotatingGaussian>(pot)) &&
         !is_zero(pot);
}

double potential_value(const Potential& pot, double t, double x1, double x2) noexcept {
  return std::visit(
      overloaded{
          [](const ZeroPotential&) { return 0.0; },
          [&](const StaticGaussian& g) {
            return gaussian(g.amplitude, g.gamma, x1 - g.center_x, x2 - g.center_y);
          },
          [&](const MovingGaussian& g) { return gaussian(g.amplitude, g.gamma, x1 - g.speed * t, x2); },
          [&](const RotatingGaussian& g) {
            const double phase = g.angular_speed * t;
            return gaussian(g.amplitude, g.gamma, x1 - g.radius * std::cos(phase),
                            x2 - g.radius * std::sin(phase));
          },
      },
      pot);
}

double potential_rate(const Potential& pot, double t, double x1, double x2) noexcept {
  return std::visit(
      overloaded{
          [](const ZeroPotential&) { return 0.0; },
          [](const StaticGaussian&) { return 0.0; },
          [&](const MovingGaussian& g) {
            const double dx = x1 - g.speed * t;
            return gaussian(g.amplitude, g.gamma, dx, x2) * g.gamma * g.gamma * dx * g.speed;
          },
          [&](const RotatingGaussian& g) {
            const double phase = g.angular_speed * t;
            const double dx = x1 - g.radius * std::cos(phase);
            const double dy = x2 - g.radius * std::sin(phase);
            // d/dt of the centre is r0 a (-sin, cos).
            const double drift = dx * (-std::sin(phase)) + dy * std::cos(phase);
            return gaussian(g.amplitude, g.gamma, dx, dy) * g.gamma * g.gamma * g.radius *
                   g.angular_speed * drift;
          },
      },
      pot);
}

std::vector<double> sample_potential(const Potential& pot, double t, const Grid& grid) {
  std::vector<double> out(grid.size(), 0.0);
  if (!std::holds_alternative<ZeroPotential>(pot))
    for_each_node(grid, out, [&](double x, double y) { return potential_value(pot, t, x, y); });
  return out;
}

std::vector<double> sample_potential_rate(const Potential& pot, double t, const Grid& grid) {
  std::vector<double> out(grid.size(), 0.0);
  if (is_time_dependent(pot))
    for_each_node(grid, out, [&](double x, double y) { return potential_rate(pot, t, x, y); });
  return out;
}

Field eval_potential(const Potential& pot, double t, const Grid& grid) {
  const auto v = sample_potential(pot, t, grid);
  Field out(grid);
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Complex{v[i], 0.0};
  return out;
}

std::string_view to_string(QuadratureRule rule) {
  switch (rule) {
    case QuadratureRule::exact: return "exact";
    case QuadratureRule::midpoint: return "midpoint";
    case QuadratureRule::left: return "left";
    case QuadratureRule::gauss2: return "gauss2";
  }
  return "midpoint";
}

QuadratureRule quadrature_rule_from_string(std::string_view name) {
  if (name == "exact") return QuadratureRule::exact;
  if (name == "midpoint") return QuadratureRule::midpoint;
  if (name == "left") return QuadratureRule::left;
  if (name == "gauss2") return QuadratureRule::gauss2;
  throw ValidationError("unknown quadrature rule '" + std::string(name) + "'");
}

void integrate_potential(const Potential& pot, double t0, double tau, QuadratureRule rule,
                         const Grid& grid, std::span<double> out) {
  if (out.size() != grid.size()) throw ValidationError("potential integral buffer size mismatch");
  if (is_zero(pot)) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  const bool dynamic = is_time_dependent(pot);
  if (rule == QuadratureRule::exact && dynamic)
    throw ValidationError("exact potential integral is only available for time-independent potentials");

  if (!dynamic || rule == QuadratureRule::exact) {
    for_each_node(grid, out, [&](double x, double y) { return tau * potential_value(pot, t0, x, y); });
    return;
  }
  switch (rule) {
    case QuadratureRule::left:
      for_each_node(grid, out, [&](double x, double y) { return tau * potential_value(pot, t0, x, y); });
      break;
    case QuadratureRule::midpoint: {
      const double tm = t0 + 0.5 * tau;
      for_each_node(grid, out, [&](double x, double y) { return tau * potential_value(pot, tm, x, y); });
      break;
    }
    case QuadratureRule::gauss2: {
      const double offset = 0.5 * tau / std::sqrt(3.0);
      const double t1 = t0 + 0.5 * tau - offset;
      const double t2 = t0 + 0.5 * tau + offset;
      for_each_node(grid, out, [&](double x, double y) {
        return 0.5 * tau * (potential_value(pot, t1, x, y) + potential_value(pot, t2, x, y));
      });
      break;
    }
    case QuadratureRule::exact:
      break;
  }
}

Field potential_time_integral(const Potential& pot, double t0, double tau, QuadratureRule rule,
                              const Grid& grid) {
  std::vector<double> buffer(grid.size());
  integrate_potential(pot, t0, tau, rule, grid, buffer);
  Field out(grid);
  for (std::size_t i = 0; i < buffer.size(); ++i) out[i] = Complex{buffer[i], 0.0};
  return out;
}

}  // namespace gpsplit
