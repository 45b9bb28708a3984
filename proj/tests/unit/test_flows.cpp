#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gpsplit/background.hpp"
#include "gpsplit/errors.hpp"
#include "gpsplit/flows.hpp"
#include "gpsplit/integrators.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace gpsplit;
using namespace gpsplit::testing;

namespace {
constexpr double pi = std::numbers::pi;
const Complex I{0.0, 1.0};

std::vector<Complex> to_vec(const Field& f) { return {f.values().begin(), f.values().end()}; }
}  // namespace

TEST_CASE("flow_A: periodic exactness against RK4") {
  const Grid g = make_grid(1, 2.0 * pi, 64, BoundaryKind::periodic);
  const double mass = 0.5;
  const Field u0 = random_smooth_field(g, 3, 0.8, {1.0, 0.0}, 6);
  LinearPropagator prop(g, mass);
  const FlowState out = flow_A(FlowState::u_form(u0), 0.1, prop);
  const auto oracle = rk4(
      [&](double, const std::vector<Complex>& y) {
        auto lap = periodic_laplacian(g, y);
        for (auto& z : lap) z *= -I / (2.0 * mass);
        return lap;
      },
      to_vec(u0), 0.0, 0.1, 1000);
  CHECK(max_diff(oracle, out.field.values()) <= 1e-8);
  CHECK(out.clock == 0.0);
}

TEST_CASE("flow_A: Dirichlet exactness against RK4") {
  const Grid g = make_grid(1, 4.0, 64, BoundaryKind::dirichlet);
  const BoundaryValues bv = background_limits(DarkSoliton{1.3});
  const Field u0 = eval_background(DarkSoliton{1.3}, g);
  LinearPropagator prop(g, 0.5);
  const FlowState out = flow_A(FlowState::u_form(u0, 0.0, bv), 0.1, prop);
  const auto oracle = rk4(
      [&](double, const std::vector<Complex>& y) {
        auto lap = sine_laplacian(g, bv, y);
        for (auto& z : lap) z *= -I;
        return lap;
      },
      to_vec(u0), 0.0, 0.1, 1000);
  CHECK(max_diff(oracle, out.field.values()) <= 1e-8);
}

TEST_CASE("flow_B: exactness against RK4 with a static potential") {
  const Grid g = make_grid(1, 3.0, 64, BoundaryKind::periodic);
  const StaticGaussian pot{4.0, 2.0, 0.3, 0.0};
  const PhysParams params{0.8, 0.5};
  const Field u0 = random_smooth_field(g, 9, 0.9);
  const auto v = sample_potential(pot, 0.0, g);
  const FlowState out = flow_B(FlowState::u_form(u0, 0.5), 0.1, NonlinearStep{pot, params, QuadratureRule::exact});
  const auto oracle = rk4(
      [&](double, const std::vector<Complex>& y) {
        std::vector<Complex> d(y.size());
        for (std::size_t i = 0; i < y.size(); ++i)
          d[i] = -I * (params.nonlinearity() * (1.0 - std::norm(y[i])) + v[i]) * y[i];
        return d;
      },
      to_vec(u0), 0.0, 0.1, 1000);
  CHECK(max_diff(oracle, out.field.values()) <= 1e-8);
  CHECK(out.clock == doctest::Approx(0.6));
}

TEST_CASE("flow_A: examples") {
  const Grid g = make_grid(1, 3.0, 32, BoundaryKind::periodic);
  LinearPropagator prop(g, 0.5);
  const Field c = Field::constant(g, {0.6, -0.8});
  CHECK(max_abs_diff(flow_A(FlowState::u_form(c), 0.37, prop).field, c) <= 1e-15);

  const double k = g.modes()[4];
  const Field wave = Field::sample(g, [&](double x, double) { return std::exp(I * k * x); });
  const double tau = 0.05;
  CHECK(max_abs_diff(flow_A(FlowState::u_form(wave), tau, prop).field, std::exp(I * k * k * tau) * wave) <= 1e-13);

  const Grid gd = make_grid(1, 5.0, 40, BoundaryKind::dirichlet);
  const BoundaryValues bv{{0.3, 0.2}, {-1.0, 0.5}};
  const Field ramp = Field::sample(gd, [&](double x, double) { return bv.ramp(x, 5.0); });
  LinearPropagator dprop(gd, 0.5);
  for (double t : {0.01, 1.0, 50.0})
    CHECK(max_abs_diff(flow_A(FlowState::u_form(ramp, 0.0, bv), t, dprop).field, ramp) <= 1e-14);

  CHECK_THROWS_AS(flow_A(FlowState::u_form(c), -0.1, prop), ValidationError);
}

TEST_CASE("flow_B: examples") {
  const Grid g = make_grid(2, 2.0, 8, BoundaryKind::periodic);
  const NonlinearStep step{ZeroPotential{}, PhysParams{}, QuadratureRule::midpoint};
  const Field unit = Field::constant(g, std::polar(1.0, 0.4));
  CHECK(max_abs_diff(flow_B(FlowState::u_form(unit), 2.5, step).field, unit) <= 1e-15);

  const double tau = 0.3;
  const Field two = Field::constant(g, 2.0);
  const Field expected = Field::constant(g, 2.0 * std::exp(3.0 * I * tau));
  CHECK(max_abs_diff(flow_B(FlowState::u_form(two), tau, step).field, expected) <= 1e-14);

  const BoundaryValues lim = background_limits(DarkSoliton{1.3});
  const Grid g1 = make_grid(1, 2.0, 8, BoundaryKind::periodic);
  for (Complex value : {lim.lower, lim.upper}) {
    const Field f = Field::constant(g1, value);
    CHECK(max_abs_diff(flow_B(FlowState::u_form(f), 0.7, step).field, f) <= 1e-15);
  }
  CHECK_THROWS_AS(flow_B(FlowState::u_form(two), -tau, step), ValidationError);
}

TEST_CASE("property: flow_B conserves the modulus pointwise") {
  const Grid g = make_grid(2, 5.0, 32, BoundaryKind::periodic);
  const NonlinearStep step{MovingGaussian{}, PhysParams{0.2, 15.0}, QuadratureRule::midpoint};
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const Field u = random_smooth_field(g, seed, 1.0);
    const FlowState out = flow_B(FlowState::u_form(u, 0.2), 0.05 * (seed + 1), step);
    for (std::size_t i = 0; i < u.size(); ++i) CHECK(std::abs(std::abs(out.field[i]) - std::abs(u[i])) <= 1e-14);
  }
}

TEST_CASE("property: periodic flow_A is unitary in L2 and H2") {
  for (int dim : {1, 2}) {
    const Grid g = make_grid(dim, 3.0, 32, BoundaryKind::periodic);
    LinearPropagator prop(g, 15.0);
    const Field u = random_smooth_field(g, 21, 1.0);
    const Field out = flow_A(FlowState::u_form(u), 0.7, prop).field;
    for (auto kind : {NormKind::L2, NormKind::H1, NormKind::H2}) {
      const double before = norm(u, kind);
      CHECK(std::abs(norm(out, kind) - before) <= 1e-12 * before);
    }
  }
}

TEST_CASE("property: Dirichlet flow_A preserves the L2 norm of the sine part") {
  const Grid g = make_grid(1, 6.0, 63, BoundaryKind::dirichlet);
  const BoundaryValues bv{{1.0, 0.0}, {0.0, 1.0}};
  const Field ramp = Field::sample(g, [&](double x, double) { return bv.ramp(x, 6.0); });
  const Field u = ramp + random_smooth_field(g, 5, 1.0, {0.0, 0.0});
  LinearPropagator prop(g, 0.5);
  const Field out = flow_A(FlowState::u_form(u, 0.0, bv), 0.9, prop).field;
  const double before = norm(u - ramp, NormKind::L2);
  CHECK(std::abs(norm(out - ramp, NormKind::L2) - before) <= 1e-12 * before);
}

TEST_CASE("property: group property of both sub-flows") {
  const Grid g = make_grid(2, 3.0, 32, BoundaryKind::periodic);
  const Field u = random_smooth_field(g, 8, 0.7);
  LinearPropagator prop(g, 0.5);
  const Field split = flow_A(flow_A(FlowState::u_form(u), 0.13, prop), 0.29, prop).field;
  const Field joint = flow_A(FlowState::u_form(u), 0.42, prop).field;
  CHECK(max_abs_diff(split, joint) <= 1e-12);

  const NonlinearStep step{StaticGaussian{5.0, 2.0, 0.0, 0.0}, PhysParams{0.5, 0.5}, QuadratureRule::exact};
  const FlowState b2 = flow_B(flow_B(FlowState::u_form(u, 1.0), 0.13, step), 0.29, step);
  const FlowState b1 = flow_B(FlowState::u_form(u, 1.0), 0.42, step);
  CHECK(max_abs_diff(b2.field, b1.field) <= 1e-12);
  CHECK(b2.clock == doctest::Approx(b1.clock).epsilon(1e-15));
}

TEST_CASE("property: constants are fixed points of flow_A") {
  for (int dim : {1, 2}) {
    const Grid g = make_grid(dim, 7.0, 16, BoundaryKind::periodic);
    LinearPropagator prop(g, 2.0);
    for (Complex c : {Complex{1.0, 0.0}, Complex{-0.3, 2.0}, Complex{0.0, 0.0}}) {
      const Field f = Field::constant(g, c);
      CHECK(max_abs_diff(flow_A(FlowState::u_form(f), 3.3, prop).field, f) <= 1e-14 * std::max(1.0, std::abs(c)));
    }
  }
}

TEST_CASE("uv_equivalence_check: examples") {
  const Grid g = make_grid(1, 20.0, 255, BoundaryKind::dirichlet);
  const BoundaryValues bv = background_limits(DarkSoliton{1.3});
  const Field phi = eval_background(DarkSoliton{1.3}, g);
  const Field v0 = Field::sample(g, [](double x, double) { return Complex{-0.5 * std::exp(-x * x), 0.0}; });
  FlowState us = FlowState::u_form(phi + v0, 0.0, bv);
  FlowState vs = FlowState::v_form(v0, phi, 0.0, bv);
  CHECK(uv_equivalence_check(us, vs) == 0.0);

  LinearPropagator prop(g, 0.5);
  CHECK(uv_equivalence_check(flow_A(us, 0.1, prop), flow_A(vs, 0.1, prop)) <= 1e-12);

  const NonlinearStep step{ZeroPotential{}, PhysParams{}, QuadratureRule::midpoint};
  CHECK(uv_equivalence_check(flow_B(us, 0.1, step), flow_B(vs, 0.1, step)) <= 1e-14);

  CHECK_THROWS_AS(uv_equivalence_check(flow_B(us, 0.1, step), vs), ValidationError);
  CHECK_THROWS_AS(uv_equivalence_check(us, us), ValidationError);
  const Grid other = make_grid(1, 20.0, 127, BoundaryKind::dirichlet);
  CHECK_THROWS_AS(uv_equivalence_check(FlowState::u_form(Field(other)), vs), ValidationError);
}

TEST_CASE("uv_equivalence_check: 100 Strang steps on the soliton") {
  const Grid g = make_grid(1, 60.0, 1023, BoundaryKind::dirichlet);
  const BoundaryValues bv = background_limits(DarkSoliton{1.3});
  const Field phi = eval_background(DarkSoliton{1.3}, g);
  FlowState us = FlowState::u_form(phi, 0.0, bv);
  FlowState vs = FlowState::v_form(Field(g), phi, 0.0, bv);
  SplittingStepper stepper(g, ZeroPotential{}, PhysParams{});
  for (int n = 0; n < 100; ++n) {
    stepper.strang_step(us, 1e-2);
    stepper.strang_step(vs, 1e-2);
  }
  CHECK(uv_equivalence_check(us, vs) <= 1e-11 * us.field.max_modulus());
}
