#pragma once

#include <variant>

#include "gpsplit/field.hpp"

namespace gpsplit {

/// Spatially constant background of unit modulus.
struct ConstantBackground {
  Complex value{1.0, 0.0};
};

/// 1D dark soliton profile
///   phi_c(x) = sqrt((2-c^2)/2) tanh(sqrt(2-c^2)/2 x) + i c/sqrt(2),  |c| < sqrt(2).
struct DarkSoliton {
  double speed = 1.3;
};

using Background = std::variant<ConstantBackground, DarkSoliton>;

/// Throws ValidationError for |c0| != 1 or |c| >= sqrt(2).
void validate(const Background& bg);

Complex background_value(const Background& bg, double x);
Complex dark_soliton_profile(double speed, double x);

/// Limits phi(-inf), phi(+inf).
BoundaryValues background_limits(const Background& bg);

/// Samples phi on the grid. Dark solitons are 1D only.
Field eval_background(const Background& bg, const Grid& grid);

/// Exact travelling-wave solution u(t, x) = phi_c(x + c t) (eps = 1, m = 1/2, V = 0).
Field soliton_solution(double speed, double t, const Grid& grid);

}  // namespace gpsplit
