#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gpsplit/background.hpp"
#include "gpsplit/diagnostics.hpp"
#include "gpsplit/groundstate.hpp"
#include "gpsplit/integrators.hpp"

namespace gpsplit {

enum class Scenario {
  soliton_convergence,
  soliton_conservation,
  perturbed_convergence,
  vortex_case_i,
  vortex_case_ii,
  custom,
};

std::string_view to_string(Scenario scenario);
Scenario scenario_from_string(std::string_view name);

struct GridSpec {
  int dim = 1;
  double half_width = 60.0;
  int points = 1023;
  BoundaryKind bc = BoundaryKind::dirichlet;

  Grid build() const { return make_grid(dim, half_width, points, bc); }
};

enum class InitialKind {
  /// u0 = phi (the configured background).
  background,
  /// u0 = phi - amplitude * exp(-x^2).
  perturbed,
  /// u0 = energy minimiser with V(0, .).
  groundstate,
};

struct InitialSpec {
  InitialKind kind = InitialKind::background;
  double amplitude = 0.5;
};

struct SweepSpec {
  /// Strictly decreasing step sizes.
  std::vector<double> taus{1e-2, 5e-3, 2.5e-3, 1.25e-3};
  std::vector<Scheme> schemes{Scheme::lie, Scheme::strang};
  /// Step of the numerical reference when no exact solution exists.
  double tau_ref = 5e-5;
};

/// Fully resolved run description. parse_run_config() starts from
/// default_config(scenario) and overlays the keys present in the JSON.
struct RunConfig {
  Scenario scenario = Scenario::custom;
  GridSpec grid;
  PhysParams params;
  Background background = ConstantBackground{};
  InitialSpec initial;
  Potential potential = ZeroPotential{};
  SchemeConfig scheme;
  SweepSpec sweep;
  MinimizeConfig minimize;
  std::optional<double> vortex_density_threshold;
  /// Grid-doubling check of the spatial error in convergence runs.
  bool check_resolution = true;
  std::uint64_t seed = 0;
  std::string output_dir = "gpsplit_out";
  /// Upper bound on concurrently running sweep members.
  int threads = 1;

  void validate() const;
};

RunConfig default_config(Scenario scenario);
RunConfig parse_run_config(std::string_view json_text);
RunConfig load_run_config(const std::filesystem::path& path);
/// Resolved configuration as pretty-printed JSON.
std::string to_json(const RunConfig& cfg);

/// Initial state for the configured problem (u-form or v-form per cfg.scheme.form).
FlowState initial_state(const RunConfig& cfg, const Grid& grid,
                        MinimizeResult* groundstate_report = nullptr);

struct ConvergencePoint {
  Scheme scheme = Scheme::lie;
  double tau = 0.0;
  double err_x2 = 0.0;
  double energy_err = 0.0;
  double mass_err = 0.0;
};

struct ResolutionCheck {
  int points = 0;
  int fine_points = 0;
  double spatial_error = 0.0;
  double min_splitting_error = 0.0;
  bool passed = false;
};

struct ConvergenceResult {
  std::vector<ConvergencePoint> points;
  double lie_x2_slope = 0.0;
  double strang_x2_slope = 0.0;
  double lie_energy_slope = 0.0;
  double strang_energy_slope = 0.0;
  double horizon = 0.0;
  std::optional<ResolutionCheck> resolution;
};

/// soliton_convergence (exact reference) or perturbed_convergence
/// (Strang reference at tau_ref). Errors are measured at the final time.
ConvergenceResult run_convergence(const RunConfig& cfg);

struct ConservationRun {
  Scheme scheme = Scheme::lie;
  Trajectory trajectory;
  double max_mass_drift = 0.0;
  double max_energy_drift = 0.0;
};

struct ConservationResult {
  std::vector<ConservationRun> runs;
};

/// Per-step energy and mass for each scheme at fixed tau.
ConservationResult run_soliton_conservation(const RunConfig& cfg);

struct VortexFrame {
  double t = 0.0;
  VortexReport report;
};

struct VortexCaseResult {
  MinimizeResult groundstate;
  Trajectory trajectory;
  std::vector<VortexFrame> frames;
  bool aborted = false;
  std::string abort_message;
};

/// Ground state with V(0, .) followed by Strang stepping on the periodic
/// 2D grid; vortex windings are recorded at every diagnostics frame.
VortexCaseResult run_vortex_case(const RunConfig& cfg);

/// diagnostics.csv, fields/<name>.json+bin and run_metadata.json.
void write_outputs(const Trajectory& trajectory, const std::filesystem::path& dir,
                   const std::string& metadata_json);

/// Dispatches on cfg.scenario, writes every artifact under `out_dir` and
/// returns the process exit code (0 success, 3 blow-up abort).
int run_scenario(const RunConfig& cfg, const std::filesystem::path& out_dir);

/// Computes and writes a ground state only (`gpsplit groundstate`).
int run_groundstate(const RunConfig& cfg, const std::filesystem::path& out_dir);

}  // namespace gpsplit
