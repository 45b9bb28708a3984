#pragma once

#include <optional>
#include <vector>

#include "gpsplit/field.hpp"
#include "gpsplit/potential.hpp"
#include "gpsplit/transforms.hpp"

namespace gpsplit {

enum class Form { u, v };

/// State of a splitting integration: the evolved field plus the physical
/// clock. In v-form `field` holds the perturbation v = u - phi around the
/// stored background phi. Dirichlet grids carry the boundary constants of u.
struct FlowState {
  Field field;
  double clock = 0.0;
  std::optional<Field> background;
  std::optional<BoundaryValues> boundary;

  static FlowState u_form(Field u, double t = 0.0,
                          std::optional<BoundaryValues> boundary = std::nullopt);
  static FlowState v_form(Field v, Field background, double t = 0.0,
                          std::optional<BoundaryValues> boundary = std::nullopt);

  Form form() const noexcept { return background ? Form::v : Form::u; }
  const Grid& grid() const noexcept { return field.grid(); }
  /// The physical field u (phi + v in v-form).
  Field full_field() const;
};

/// Exact solution operator of i xi_t = (1/(2m)) Lap xi.
///
/// Periodic grids: each Fourier mode gains exp(i |k|^2 tau / (2m)).
/// Dirichlet grids: u = r + w with r the linear ramp between the boundary
/// constants; w is propagated exactly in the sine basis and r is added back.
/// Multipliers are cached for the last step size.
class LinearPropagator {
 public:
  LinearPropagator(const Grid& grid, double mass);

  /// Applies the flow in place. Any real tau is accepted (negative runs the
  /// group backwards).
  void apply(std::span<Complex> u, double tau, std::optional<BoundaryValues> boundary = std::nullopt);

  const Grid& grid() const noexcept { return grid_; }
  double mass() const noexcept { return mass_; }

 private:
  void update_multipliers(double tau);

  Grid grid_;
  double mass_;
  std::optional<FourierTransform> fourier_;
  std::optional<SineTransform> sine_;
  std::vector<double> wavenumber_sq_;
  std::vector<Complex> multipliers_;
  std::vector<double> nodes_;
  std::optional<double> cached_tau_;
};

/// Potential-integral rule matched to the scheme order (left for Lie,
/// midpoint for Strang) unless overridden.
struct NonlinearStep {
  Potential potential;
  PhysParams params;
  QuadratureRule rule = QuadratureRule::midpoint;
};

namespace detail {
// Signed-time versions used by the steppers and the time-reversal checks.
void advance_linear(FlowState& state, double tau, LinearPropagator& propagator);
void advance_nonlinear(FlowState& state, double tau, const NonlinearStep& step,
                       std::vector<double>& scratch);
}  // namespace detail

/// Free Schrodinger sub-flow; clock unchanged. Rejects tau < 0.
FlowState flow_A(FlowState state, double tau, LinearPropagator& propagator);

/// Pointwise phase sub-flow
///   zeta -> exp(-i tau (1/eps^2)(1 - |zeta|^2)) exp(-i int_{t0}^{t0+tau} V) zeta,
/// with the clock advanced from t0 to t0 + tau. Rejects tau < 0.
FlowState flow_B(FlowState state, double tau, const NonlinearStep& step);

/// max |u - (phi + v)| over the nodes; throws on grid or clock mismatch.
double uv_equivalence_check(const FlowState& u_state, const FlowState& v_state);

}  // namespace gpsplit
