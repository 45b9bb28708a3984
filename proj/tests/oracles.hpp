#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "gpsplit/field.hpp"

namespace gpsplit::testing {

using Vec = std::vector<Complex>;
using Rhs = std::function<Vec(double, const Vec&)>;

/// Classical four-stage Runge-Kutta with `substeps` uniform steps.
inline Vec rk4(const Rhs& f, Vec y, double t0, double tau, int substeps) {
  const double h = tau / substeps;
  const auto axpy = [](const Vec& a, double s, const Vec& b) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + s * b[i];
    return out;
  };
  double t = t0;
  for (int n = 0; n < substeps; ++n) {
    const auto k1 = f(t, y);
    const auto k2 = f(t + h / 2, axpy(y, h / 2, k1));
    const auto k3 = f(t + h / 2, axpy(y, h / 2, k2));
    const auto k4 = f(t + h, axpy(y, h, k3));
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    t += h;
  }
  return y;
}

/// Spectral Laplacian on a periodic 1D grid from explicit trigonometric sums.
inline Vec periodic_laplacian(const Grid& g, const Vec& u) {
  constexpr double pi = std::numbers::pi;
  const int n = g.points();
  Vec coeff(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      coeff[static_cast<std::size_t>(k)] += u[static_cast<std::size_t>(j)] * std::polar(1.0, -2.0 * pi * k * j / n);
  Vec out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const int signed_k = k < n / 2 ? k : k - n;
    const double wav = signed_k * pi / g.half_width();
    for (int j = 0; j < n; ++j)
      out[static_cast<std::size_t>(j)] +=
          -wav * wav * coeff[static_cast<std::size_t>(k)] * std::polar(1.0, 2.0 * pi * k * j / n) / static_cast<double>(n);
  }
  return out;
}

/// Sine-series Laplacian of u minus its boundary ramp on a Dirichlet grid.
inline Vec sine_laplacian(const Grid& g, const BoundaryValues& bv, const Vec& u) {
  constexpr double pi = std::numbers::pi;
  const int n = g.points();
  const double L = g.half_width();
  Vec w(u.size());
  for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(j)] = u[static_cast<std::size_t>(j)] - bv.ramp(g.node(j), L);
  Vec out(u.size());
  for (int m = 1; m <= n; ++m) {
    Complex c;
    for (int j = 0; j < n; ++j) c += w[static_cast<std::size_t>(j)] * std::sin(pi * m * (j + 1) / (n + 1));
    c *= 2.0 / (n + 1);
    const double k = m * pi / (2.0 * L);
    for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] -= k * k * c * std::sin(pi * m * (j + 1) / (n + 1));
  }
  return out;
}

inline double max_diff(const Vec& a, std::span<const Complex> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace gpsplit::testing
