#include "gpsplit/background.hpp"

#include <cmath>
#include <numbers>

#include "gpsplit/errors.hpp"

namespace gpsplit {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
}  // namespace

void validate(const Background& bg) {
  std::visit(overloaded{
                 [](const ConstantBackground& c) {
                   if (std::abs(std::abs(c.value) - 1.0) > 1e-12)
                     throw ValidationError("constant background must have unit modulus");
                 },
                 [](const DarkSoliton& s) {
                   if (!(std::abs(s.speed) < std::numbers::sqrt2))
                     throw ValidationError("dark soliton speed must satisfy |c| < sqrt(2)");
                 },
             },
             bg);
}

Complex dark_soliton_profile(double speed, double x) {
  const double depth = 2.0 - speed * speed;
  return {std::sqrt(depth / 2.0) * std::tanh(std::sqrt(depth) / 2.0 * x),
          speed / std::numbers::sqrt2};
}

Complex background_value(const Background& bg, double x) {
  return std::visit(overloaded{
                        [](const ConstantBackground& c) { return c.value; },
                        [x](const DarkSoliton& s) { return dark_soliton_profile(s.speed, x); },
                    },
                    bg);
}

BoundaryValues background_limits(const Background& bg) {
  return std::visit(overloaded{
                        [](const ConstantBackground& c) { return BoundaryValues{c.value, c.value}; },
                        [](const DarkSoliton& s) {
                          const double re = std::sqrt((2.0 - s.speed * s.speed) / 2.0);
                          const double im = s.speed / std::numbers::sqrt2;
                          return BoundaryValues{{-re, im}, {re, im}};
                        },
                    },
                    bg);
}

Field eval_background(const Background& bg, const Grid& grid) {
  validate(bg);
  if (std::holds_alternative<DarkSoliton>(bg) && grid.dim() != 1)
    throw ValidationError("dark soliton background is defined on 1D grids only");
  return Field::sample(grid, [&](double x, double) { return background_value(bg, x); });
}

Field soliton_solution(double speed, double t, const Grid& grid) {
  if (grid.dim() != 1) throw ValidationError("soliton solution is defined on 1D grids only");
  validate(DarkSoliton{speed});
  return Field::sample(grid, [&](double x, double) { return dark_soliton_profile(speed, x + speed * t); });
}

}  // namespace gpsplit
