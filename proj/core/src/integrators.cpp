#include "gpsplit/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gpsplit/background.hpp"

namespace gpsplit {

std::string_view to_string(Scheme scheme) { return scheme == Scheme::lie ? "lie" : "strang"; }

Scheme scheme_from_string(std::string_view name) {
  if (name == "lie") return Scheme::lie;
  if (name == "strang") return Scheme::strang;
  throw ValidationError("unknown scheme '" + std::string(name) + "'");
}

std::string_view to_string(Form form) { return form == Form::u ? "u" : "v"; }

Form form_from_string(std::string_view name) {
  if (name == "u") return Form::u;
  if (name == "v") return Form::v;
  throw ValidationError("unknown form '" + std::string(name) + "'");
}

QuadratureRule default_rule(Scheme scheme) noexcept {
  return scheme == Scheme::lie ? QuadratureRule::left : QuadratureRule::midpoint;
}

SplittingStepper::SplittingStepper(const Grid& grid, Potential potential, PhysParams params)
    : propagator_(grid, params.mass), nonlinear_{std::move(potential), params, QuadratureRule::midpoint} {
  params.validate();
}

void SplittingStepper::lie_step(FlowState& state, double tau, std::optional<QuadratureRule> rule) {
  nonlinear_.rule = rule.value_or(default_rule(Scheme::lie));
  detail::advance_linear(state, tau, propagator_);
  detail::advance_nonlinear(state, tau, nonlinear_, scratch_);
}

void SplittingStepper::strang_step(FlowState& state, double tau, std::optional<QuadratureRule> rule) {
  nonlinear_.rule = rule.value_or(default_rule(Scheme::strang));
  detail::advance_linear(state, 0.5 * tau, propagator_);
  detail::advance_nonlinear(state, tau, nonlinear_, scratch_);
  detail::advance_linear(state, 0.5 * tau, propagator_);
}

void SplittingStepper::step(Scheme scheme, FlowState& state, double tau,
                            std::optional<QuadratureRule> rule) {
  if (scheme == Scheme::lie)
    lie_step(state, tau, rule);
  else
    strang_step(state, tau, rule);
}

void SplittingStepper::strang_adjoint_step(FlowState& state, double tau,
                                           std::optional<QuadratureRule> rule) {
  strang_step(state, -tau, rule);
}

FlowState lie_step(FlowState state, double tau, const Potential& pot, const PhysParams& params) {
  if (tau < 0.0) throw ValidationError("step size must be non-negative");
  SplittingStepper stepper(state.grid(), pot, params);
  stepper.lie_step(state, tau);
  return state;
}

FlowState strang_step(FlowState state, double tau, const Potential& pot, const PhysParams& params) {
  if (tau < 0.0) throw ValidationError("step size must be non-negative");
  SplittingStepper stepper(state.grid(), pot, params);
  stepper.strang_step(state, tau);
  return state;
}

void SchemeConfig::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ValidationError("tau must be positive");
  if (tau > 1.0) throw ValidationError("tau must not exceed 1");
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) throw ValidationError("horizon T must be non-negative");
  if (diag_every < 1) throw ValidationError("diagnostics cadence must be >= 1");
  if (snapshot_every < 0) throw ValidationError("snapshot cadence must be >= 0");
}

int SchemeConfig::steps() const { return static_cast<int>(std::llround(horizon / tau)); }

double SchemeConfig::actual_horizon() const { return steps() * tau; }

QuadratureRule SchemeConfig::resolved_rule() const { return rule.value_or(default_rule(scheme)); }

Observer default_observer(const Potential& pot, const PhysParams& params) {
  return [pot, params](const FlowState& state) {
    const Field u = state.full_field();
    DiagRow row;
    row.t = state.clock;
    row.energy = energy_GL(u, pot, state.clock, params, state.boundary);
    row.mass = mass_generalized(u);
    row.norm_l2 = norm(u, NormKind::L2, state.boundary);
    row.norm_h2 = norm(u, NormKind::H2, state.boundary);
    if (u.grid().dim() == 2) {
      const auto report = vortex_windings(u);
      row.vortex_count = static_cast<int>(report.events.size());
      row.net_winding = report.net_winding;
    }
    return row;
  };
}

namespace {

double max_full_modulus(const FlowState& state) {
  const auto v = state.field.values();
  double worst = 0.0;
  if (!state.background) {
    for (auto z : v) {
      const double m = std::abs(z);
      if (!std::isfinite(m)) return m;
      worst = std::max(worst, m);
    }
    return worst;
  }
  const auto phi = state.background->values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double m = std::abs(v[i] + phi[i]);
    if (!std::isfinite(m)) return m;
    worst = std::max(worst, m);
  }
  return worst;
}

}  // namespace

Trajectory evolve(FlowState initial, const SchemeConfig& cfg, const Potential& pot,
                  const PhysParams& params, const Observer& observer) {
  cfg.validate();
  params.validate();
  const Observer observe = observer ? observer : default_observer(pot, params);
  const int steps = cfg.steps();
  const QuadratureRule rule = cfg.resolved_rule();
  const double limit = 10.0 * std::max(1.0, max_full_modulus(initial));

  auto traj = std::make_shared<Trajectory>();
  traj->steps = steps;
  traj->horizon = cfg.actual_horizon();
  traj->rows.push_back(observe(initial));
  traj->snapshots.push_back({initial.clock, 0, initial.full_field()});

  SplittingStepper stepper(initial.grid(), pot, params);
  FlowState state = std::move(initial);
  const double t0 = state.clock;
  for (int n = 1; n <= steps; ++n) {
    FlowState previous = state;
    stepper.step(cfg.scheme, state, cfg.tau, rule);
    // Keep the clock on the uniform grid t0 + n tau.
    state.clock = t0 + n * cfg.tau;
    const double m = max_full_modulus(state);
    if (!std::isfinite(m) || m > limit) {
      traj->final_state = previous;
      if (traj->snapshots.back().step != n - 1)
        traj->snapshots.push_back({previous.clock, n - 1, previous.full_field()});
      const std::string what = !std::isfinite(m)
                                   ? "non-finite field value at step " + std::to_string(n)
                                   : "blow-up guard: |u| = " + std::to_string(m) + " exceeds " +
                                         std::to_string(limit) + " at step " + std::to_string(n);
      throw TrajectoryAborted(what, previous.clock, n, traj);
    }
    if (n % cfg.diag_every == 0 || n == steps) traj->rows.push_back(observe(state));
    if ((cfg.snapshot_every > 0 && n % cfg.snapshot_every == 0) || n == steps)
      traj->snapshots.push_back({state.clock, n, state.full_field()});
  }
  traj->final_state = std::move(state);
  return std::move(*traj);
}

ReferenceSolution::ReferenceSolution(SolitonReference problem, Grid grid)
    : problem_(problem), grid_(std::move(grid)) {
  validate(DarkSoliton{problem.speed});
}

ReferenceSolution::ReferenceSolution(NumericalReference problem)
    : problem_(problem), grid_(problem.initial.grid()) {
  if (!(problem.tau_ref > 0.0)) throw ValidationError("reference step must be positive");
  problem.params.validate();
}

bool ReferenceSolution::has_analytic() const noexcept {
  return std::holds_alternative<SolitonReference>(problem_);
}

Field ReferenceSolution::analytic(double t) const {
  if (!has_analytic()) throw ValidationError("problem has no analytic reference solution");
  return soliton_solution(std::get<SolitonReference>(problem_).speed, t, grid_);
}

Field ReferenceSolution::at(double t) {
  if (has_analytic()) return analytic(t);
  const auto& problem = std::get<NumericalReference>(problem_);
  const int target = static_cast<int>(std::llround((t - problem.initial.clock) / problem.tau_ref));
  if (target < 0) throw ValidationError("reference requested before the initial time");
  if (!stepper_)
    stepper_ = std::make_unique<SplittingStepper>(grid_, problem.potential, problem.params);
  if (!cached_ || cached_steps_ > target) {
    cached_ = problem.initial;
    cached_steps_ = 0;
  }
  for (; cached_steps_ < target; ++cached_steps_) {
    stepper_->strang_step(*cached_, problem.tau_ref);
    cached_->clock = problem.initial.clock + (cached_steps_ + 1) * problem.tau_ref;
  }
  return cached_->full_field();
}

}  // namespace gpsplit
