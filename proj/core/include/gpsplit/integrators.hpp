#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "gpsplit/diagnostics.hpp"
#include "gpsplit/errors.hpp"
#include "gpsplit/flows.hpp"

namespace gpsplit {

enum class Scheme { lie, strang };

std::string_view to_string(Scheme scheme);
Scheme scheme_from_string(std::string_view name);
std::string_view to_string(Form form);
Form form_from_string(std::string_view name);

/// Left-endpoint rule for Lie, midpoint for Strang.
QuadratureRule default_rule(Scheme scheme) noexcept;

/// Owns the propagator and scratch space for repeated splitting steps.
class SplittingStepper {
 public:
  SplittingStepper(const Grid& grid, Potential potential, PhysParams params);

  /// u <- Phi_B^{tau, t_n} o Phi_A^{tau} (u)
  void lie_step(FlowState& state, double tau, std::optional<QuadratureRule> rule = std::nullopt);
  /// u <- Phi_A^{tau/2} o Phi_B^{tau, t_n} o Phi_A^{tau/2} (u); the B-flow
  /// integrates V from t_n.
  void strang_step(FlowState& state, double tau, std::optional<QuadratureRule> rule = std::nullopt);
  void step(Scheme scheme, FlowState& state, double tau,
            std::optional<QuadratureRule> rule = std::nullopt);

  /// Strang composition with negated step; inverts strang_step exactly in
  /// exact arithmetic.
  void strang_adjoint_step(FlowState& state, double tau,
                           std::optional<QuadratureRule> rule = std::nullopt);

  LinearPropagator& propagator() noexcept { return propagator_; }
  const NonlinearStep& nonlinear() const noexcept { return nonlinear_; }

 private:
  LinearPropagator propagator_;
  NonlinearStep nonlinear_;
  std::vector<double> scratch_;
};

FlowState lie_step(FlowState state, double tau, const Potential& pot, const PhysParams& params);
FlowState strang_step(FlowState state, double tau, const Potential& pot, const PhysParams& params);

struct SchemeConfig {
  Scheme scheme = Scheme::strang;
  Form form = Form::u;
  double tau = 1e-3;
  double horizon = 1.0;
  std::optional<QuadratureRule> rule;
  /// Diagnostics cadence in steps (the initial and final states are always recorded).
  int diag_every = 1;
  /// Snapshot cadence in steps; 0 keeps only the initial and final fields.
  int snapshot_every = 0;

  void validate() const;
  /// round(horizon / tau).
  int steps() const;
  /// steps() * tau, the horizon actually integrated.
  double actual_horizon() const;
  QuadratureRule resolved_rule() const;
};

struct Snapshot {
  double t = 0.0;
  int step = 0;
  Field u;
};

struct Trajectory {
  std::vector<DiagRow> rows;
  std::vector<Snapshot> snapshots;
  std::optional<FlowState> final_state;
  int steps = 0;
  double horizon = 0.0;
};

/// Computes a diagnostics row for the current state.
using Observer = std::function<DiagRow(const FlowState&)>;

/// Energy, mass and norms of the full field u; vortex counts on 2D grids.
Observer default_observer(const Potential& pot, const PhysParams& params);

/// Raised by evolve() when the blow-up guard triggers; carries everything
/// recorded up to the last valid state.
class TrajectoryAborted : public BlowUpError {
 public:
  TrajectoryAborted(const std::string& what, double time, int step,
                    std::shared_ptr<const Trajectory> partial)
      : BlowUpError(what, time, step), partial_(std::move(partial)) {}

  const Trajectory& partial() const noexcept { return *partial_; }

 private:
  std::shared_ptr<const Trajectory> partial_;
};

/// Runs cfg.steps() uniform steps. Aborts when a value is non-finite or
/// |u| > 10 max(1, ||u0||_inf).
Trajectory evolve(FlowState initial, const SchemeConfig& cfg, const Potential& pot,
                  const PhysParams& params, const Observer& observer = {});

/// Exact dark soliton solution.
struct SolitonReference {
  double speed = 1.3;
};

/// Fine-step Strang run standing in for the exact solution.
struct NumericalReference {
  FlowState initial;
  Potential potential;
  PhysParams params;
  double tau_ref = 5e-5;
};

class ReferenceSolution {
 public:
  ReferenceSolution(SolitonReference problem, Grid grid);
  explicit ReferenceSolution(NumericalReference problem);

  bool has_analytic() const noexcept;
  /// Throws ValidationError for problems without a closed form.
  Field analytic(double t) const;
  /// Analytic sample when available, otherwise the numerical reference
  /// (advanced incrementally and cached between calls).
  Field at(double t);

 private:
  std::variant<SolitonReference, NumericalReference> problem_;
  Grid grid_;
  std::optional<FlowState> cached_;
  int cached_steps_ = 0;
  std::unique_ptr<SplittingStepper> stepper_;
};

}  // namespace gpsplit
