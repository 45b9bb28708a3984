#include "gpsplit/flows.hpp"

#include <algorithm>
#include <cmath>

#include "gpsplit/errors.hpp"

namespace gpsplit {

FlowState FlowState::u_form(Field u, double t, std::optional<BoundaryValues> boundary) {
  return FlowState{std::move(u), t, std::nullopt, boundary};
}

FlowState FlowState::v_form(Field v, Field background, double t,
                            std::optional<BoundaryValues> boundary) {
  if (!v.grid().same_layout(background.grid()))
    throw ValidationError("perturbation and background live on different grids");
  return FlowState{std::move(v), t, std::move(background), boundary};
}

Field FlowState::full_field() const {
  if (!background) return field;
  return field + *background;
}

LinearPropagator::LinearPropagator(const Grid& grid, double mass) : grid_(grid), mass_(mass) {
  if (!(mass > 0.0)) throw ValidationError("mass m must be positive");
  const auto k = grid.modes();
  const int n = grid.points();
  wavenumber_sq_.resize(grid.size());
  if (grid.dim() == 1) {
    for (int i = 0; i < n; ++i) wavenumber_sq_[static_cast<std::size_t>(i)] = k[static_cast<std::size_t>(i)] * k[static_cast<std::size_t>(i)];
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        wavenumber_sq_[static_cast<std::size_t>(i) * n + j] =
            k[static_cast<std::size_t>(i)] * k[static_cast<std::size_t>(i)] +
            k[static_cast<std::size_t>(j)] * k[static_cast<std::size_t>(j)];
  }
  if (grid.bc() == BoundaryKind::periodic) {
    fourier_.emplace(grid);
  } else {
    sine_.emplace(n);
    nodes_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) nodes_[static_cast<std::size_t>(i)] = grid.node(i);
  }
  multipliers_.resize(grid.size());
}

void LinearPropagator::update_multipliers(double tau) {
  if (cached_tau_ && *cached_tau_ == tau) return;
  const double rate = tau / (2.0 * mass_);
  for (std::size_t i = 0; i < multipliers_.size(); ++i)
    multipliers_[i] = std::polar(1.0, rate * wavenumber_sq_[i]);
  cached_tau_ = tau;
}

void LinearPropagator::apply(std::span<Complex> u, double tau, std::optional<BoundaryValues> boundary) {
  if (u.size() != grid_.size()) throw ValidationError("propagator applied to a field of the wrong size");
  if (tau == 0.0) return;
  update_multipliers(tau);
  if (fourier_) {
    fourier_->forward(u);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] *= multipliers_[i];
    fourier_->inverse(u);
    return;
  }
  const BoundaryValues bv = boundary.value_or(BoundaryValues{});
  const double half = grid_.half_width();
  for (std::size_t i = 0; i < u.size(); ++i) u[i] -= bv.ramp(nodes_[i], half);
  sine_->forward(u);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] *= multipliers_[i];
  sine_->inverse(u);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] += bv.ramp(nodes_[i], half);
}

namespace detail {

void advance_linear(FlowState& state, double tau, LinearPropagator& propagator) {
  if (!state.grid().same_layout(propagator.grid()))
    throw ValidationError("propagator grid does not match the state");
  auto v = state.field.values();
  if (!state.background) {
    propagator.apply(v, tau, state.boundary);
    return;
  }
  // e^{-it Lap}(phi + v) - phi
  const auto phi = state.background->values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += phi[i];
  propagator.apply(v, tau, state.boundary);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= phi[i];
}

void advance_nonlinear(FlowState& state, double tau, const NonlinearStep& step,
                       std::vector<double>& scratch) {
  const Grid& grid = state.grid();
  scratch.resize(grid.size());
  integrate_potential(step.potential, state.clock, tau, step.rule, grid, scratch);
  const double g = step.params.nonlinearity();
  auto v = state.field.values();
  if (!state.background) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double phase = -tau * g * (1.0 - std::norm(v[i])) - scratch[i];
      v[i] *= std::polar(1.0, phase);
    }
  } else {
    const auto phi = state.background->values();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Complex zeta = phi[i] + v[i];
      const double phase = -tau * g * (1.0 - std::norm(zeta)) - scratch[i];
      v[i] = zeta * std::polar(1.0, phase) - phi[i];
    }
  }
  state.clock += tau;
}

}  // namespace detail

FlowState flow_A(FlowState state, double tau, LinearPropagator& propagator) {
  if (tau < 0.0) throw ValidationError("flow_A requires tau >= 0");
  detail::advance_linear(state, tau, propagator);
  return state;
}

FlowState flow_B(FlowState state, double tau, const NonlinearStep& step) {
  if (tau < 0.0) throw ValidationError("flow_B requires tau >= 0");
  std::vector<double> scratch;
  detail::advance_nonlinear(state, tau, step, scratch);
  return state;
}

double uv_equivalence_check(const FlowState& u_state, const FlowState& v_state) {
  if (!u_state.grid().same_layout(v_state.grid()))
    throw ValidationError("u- and v-form states live on different grids");
  if (u_state.clock != v_state.clock) throw ValidationError("u- and v-form states have different clocks");
  if (!v_state.background) throw ValidationError("second state is not in v-form");
  const auto u = u_state.full_field();
  const auto v = v_state.field.values();
  const auto phi = v_state.background->values();
  double worst = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) worst = std::max(worst, std::abs(u[i] - (phi[i] + v[i])));
  return worst;
}

}  // namespace gpsplit
