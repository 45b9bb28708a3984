#include "gpsplit/experiments.hpp"

#include <fftw3.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include "gpsplit/errors.hpp"
#include "gpsplit/snapshot_io.hpp"
#include "json.hpp"

namespace gpsplit {

using nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::optional<BoundaryValues> boundary_for(const RunConfig& cfg, const Grid& grid) {
  if (grid.bc() != BoundaryKind::dirichlet) return std::nullopt;
  return background_limits(cfg.background);
}

FlowState make_state(const RunConfig& cfg, Field u0, const Field& phi, const Grid& grid) {
  const auto boundary = boundary_for(cfg, grid);
  if (cfg.scheme.form == Form::u) return FlowState::u_form(std::move(u0), 0.0, boundary);
  return FlowState::v_form(u0 - phi, phi, 0.0, boundary);
}

/// Worker count: GPSPLIT_THREADS caps cfg.threads (0 = hardware concurrency).
int worker_count(const RunConfig& cfg, std::size_t jobs) {
  int threads = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GPSPLIT_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) threads = std::min(threads, cap);
  }
  threads = std::max(threads, 1);
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads), jobs));
}

template <class Job>
void run_jobs(std::size_t count, int workers, Job&& job) {
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

Field run_steps(FlowState state, Scheme scheme, double tau, int steps, const RunConfig& cfg) {
  SplittingStepper stepper(state.grid(), cfg.potential, cfg.params);
  const auto rule = cfg.scheme.rule.value_or(default_rule(scheme));
  const double limit = 10.0 * std::max(1.0, state.full_field().max_modulus());
  for (int n = 1; n <= steps; ++n) {
    stepper.step(scheme, state, tau, rule);
    state.clock = n * tau;
  }
  Field u = state.full_field();
  if (!u.all_finite() || u.max_modulus() > limit)
    throw BlowUpError("sweep member blew up (tau = " + std::to_string(tau) + ")", steps * tau, steps);
  return u;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create directory " + dir.string() + ": " + ec.message());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

ordered_json base_metadata(const RunConfig& cfg) {
  ordered_json meta;
  meta["config"] = ordered_json::parse(to_json(cfg));
  meta["versions"] = {{"gpsplit", kVersion}, {"fftw", std::string(fftw_version)}};
  return meta;
}

Field restrict_to_coarse(const Field& fine, const Grid& coarse) {
  Field out(coarse);
  const Grid& g = fine.grid();
  if (g.bc() == BoundaryKind::dirichlet) {
    // Fine interior node 2i+1 coincides with coarse node i when N_fine = 2N+1.
    for (int i = 0; i < coarse.points(); ++i) out[static_cast<std::size_t>(i)] = fine[static_cast<std::size_t>(2 * i + 1)];
  } else if (g.dim() == 1) {
    for (int i = 0; i < coarse.points(); ++i) out[static_cast<std::size_t>(i)] = fine[static_cast<std::size_t>(2 * i)];
  } else {
    const int n = coarse.points();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out[static_cast<std::size_t>(i) * n + j] = fine[static_cast<std::size_t>(2 * i) * g.points() + 2 * j];
  }
  return out;
}

}  // namespace

FlowState initial_state(const RunConfig& cfg, const Grid& grid, MinimizeResult* groundstate_report) {
  const Field phi = eval_background(cfg.background, grid);
  Field u0 = phi;
  switch (cfg.initial.kind) {
    case InitialKind::background:
      break;
    case InitialKind::perturbed: {
      const Field bump = Field::sample(grid, [](double x, double y) { return Complex{std::exp(-(x * x + y * y)), 0.0}; });
      u0 -= Complex{cfg.initial.amplitude, 0.0} * bump;
      break;
    }
    case InitialKind::groundstate: {
      auto result = minimize(grid, cfg.potential, cfg.params, cfg.minimize);
      u0 = result.minimizer;
      if (groundstate_report) *groundstate_report = std::move(result);
      break;
    }
  }
  return make_state(cfg, std::move(u0), phi, grid);
}

ConvergenceResult run_convergence(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.scenario != Scenario::soliton_convergence && cfg.scenario != Scenario::perturbed_convergence)
    throw ValidationError("run_convergence needs a convergence scenario");
  const Grid grid = cfg.grid.build();
  const FlowState initial = initial_state(cfg, grid);
  const Field u0 = initial.full_field();
  const auto boundary = boundary_for(cfg, grid);
  const double mass0 = mass_generalized(u0);

  ConvergenceResult result;
  struct Job {
    Scheme scheme;
    double tau;
    int steps;
  };
  std::vector<Job> jobs;
  for (auto scheme : cfg.sweep.schemes)
    for (double tau : cfg.sweep.taus) {
      SchemeConfig sc = cfg.scheme;
      sc.tau = tau;
      jobs.push_back({scheme, tau, sc.steps()});
    }

  // References at every distinct final time.
  std::vector<double> horizons;
  for (const auto& job : jobs) horizons.push_back(job.steps * job.tau);
  std::vector<double> unique = horizons;
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  std::vector<Field> references;
  std::unique_ptr<ReferenceSolution> reference;
  if (cfg.scenario == Scenario::soliton_convergence) {
    reference = std::make_unique<ReferenceSolution>(SolitonReference{std::get<DarkSoliton>(cfg.background).speed}, grid);
  } else {
    reference = std::make_unique<ReferenceSolution>(NumericalReference{
        FlowState::u_form(u0, 0.0, boundary), cfg.potential, cfg.params, cfg.sweep.tau_ref});
  }
  for (double t : unique) references.push_back(reference->at(t));
  auto reference_at = [&](double t) -> const Field& {
    const auto it = std::lower_bound(unique.begin(), unique.end(), t);
    return references[static_cast<std::size_t>(it - unique.begin())];
  };

  result.points.resize(jobs.size());
  run_jobs(jobs.size(), worker_count(cfg, jobs.size()), [&](std::size_t i) {
    const auto& job = jobs[i];
    const Field u = run_steps(initial, job.scheme, job.tau, job.steps, cfg);
    const double t = job.steps * job.tau;
    const Field& ref = reference_at(t);
    ConvergencePoint p;
    p.scheme = job.scheme;
    p.tau = job.tau;
    p.err_x2 = error_norm(u, ref, NormKind::X2);
    p.energy_err = std::abs(energy_GL(u, cfg.potential, t, cfg.params, boundary) -
                            energy_GL(ref, cfg.potential, t, cfg.params, boundary));
    p.mass_err = std::abs(mass_generalized(u) - mass0);
    result.points[i] = p;
  });
  result.horizon = unique.empty() ? 0.0 : unique.back();

  auto slope = [&](Scheme scheme, bool energy) {
    std::vector<double> taus, errs;
    for (const auto& p : result.points)
      if (p.scheme == scheme) {
        taus.push_back(p.tau);
        errs.push_back(energy ? p.energy_err : p.err_x2);
      }
    if (taus.size() < 3) return std::numeric_limits<double>::quiet_NaN();
    for (double e : errs)
      if (!(e > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return fit_order(taus, errs);
  };
  result.lie_x2_slope = slope(Scheme::lie, false);
  result.strang_x2_slope = slope(Scheme::strang, false);
  result.lie_energy_slope = slope(Scheme::lie, true);
  result.strang_energy_slope = slope(Scheme::strang, true);

  if (cfg.check_resolution) {
    const double tau = cfg.sweep.taus.back();
    SchemeConfig sc = cfg.scheme;
    sc.tau = tau;
    const int steps = sc.steps();
    const int fine_points = grid.bc() == BoundaryKind::dirichlet ? 2 * grid.points() + 1 : 2 * grid.points();
    const Grid fine_grid = make_grid(grid.dim(), grid.half_width(), fine_points, grid.bc());
    const FlowState fine_initial = initial_state(cfg, fine_grid);
    const Field coarse = run_steps(initial, Scheme::strang, tau, steps, cfg);
    const Field fine = run_steps(fine_initial, Scheme::strang, tau, steps, cfg);
    ResolutionCheck check;
    check.points = grid.points();
    check.fine_points = fine_points;
    check.spatial_error = error_norm(coarse, restrict_to_coarse(fine, grid), NormKind::X2);
    check.min_splitting_error = std::numeric_limits<double>::infinity();
    for (const auto& p : result.points) check.min_splitting_error = std::min(check.min_splitting_error, p.err_x2);
    check.passed = check.spatial_error * 100.0 <= check.min_splitting_error;
    result.resolution = check;
  }
  return result;
}

ConservationResult run_soliton_conservation(const RunConfig& cfg) {
  cfg.validate();
  const Grid grid = cfg.grid.build();
  const FlowState initial = initial_state(cfg, grid);
  ConservationResult result;
  result.runs.resize(cfg.sweep.schemes.size());
  run_jobs(result.runs.size(), worker_count(cfg, result.runs.size()), [&](std::size_t i) {
    SchemeConfig sc = cfg.scheme;
    sc.scheme = cfg.sweep.schemes[i];
    ConservationRun run;
    run.scheme = sc.scheme;
    run.trajectory = evolve(initial, sc, cfg.potential, cfg.params);
    const auto& rows = run.trajectory.rows;
    for (const auto& row : rows) {
      run.max_mass_drift = std::max(run.max_mass_drift, std::abs(row.mass - rows.front().mass));
      run.max_energy_drift = std::max(run.max_energy_drift, std::abs(row.energy - rows.front().energy));
    }
    result.runs[i] = std::move(run);
  });
  return result;
}

VortexCaseResult run_vortex_case(const RunConfig& cfg) {
  cfg.validate();
  const Grid grid = cfg.grid.build();
  if (grid.dim() != 2 || grid.bc() != BoundaryKind::periodic)
    throw ValidationError("vortex runs need a periodic 2D grid");
  VortexCaseResult result{MinimizeResult(Field(grid)), {}, {}, false, {}};
  const FlowState initial = initial_state(cfg, grid, &result.groundstate);

  const Observer base = default_observer(cfg.potential, cfg.params);
  auto& frames = result.frames;
  const auto threshold = cfg.vortex_density_threshold;
  const Observer observer = [&](const FlowState& state) {
    DiagRow row = base(state);
    VortexFrame frame{state.clock, vortex_windings(state.full_field(), threshold)};
    row.vortex_count = static_cast<int>(frame.report.events.size());
    row.net_winding = frame.report.net_winding;
    frames.push_back(std::move(frame));
    return row;
  };
  try {
    result.trajectory = evolve(initial, cfg.scheme, cfg.potential, cfg.params, observer);
  } catch (const TrajectoryAborted& e) {
    result.aborted = true;
    result.abort_message = e.what();
    result.trajectory = e.partial();
  }
  return result;
}

void write_outputs(const Trajectory& trajectory, const std::filesystem::path& dir,
                   const std::string& metadata_json) {
  ensure_directory(dir / "fields");
  {
    std::ofstream csv(dir / "diagnostics.csv");
    if (!csv) throw std::runtime_error("cannot open " + (dir / "diagnostics.csv").string());
    write_diagnostics_csv(csv, trajectory.rows);
    if (!csv) throw std::runtime_error("failed writing " + (dir / "diagnostics.csv").string());
  }
  for (const auto& snap : trajectory.snapshots) {
    char name[32];
    std::snprintf(name, sizeof name, "u_%07d", snap.step);
    write_snapshot(dir / "fields" / name, snap.u, snap.t);
  }
  write_text(dir / "run_metadata.json", metadata_json + "\n");
}

namespace {

int write_convergence(const RunConfig& cfg, const std::filesystem::path& out) {
  const auto result = run_convergence(cfg);
  ensure_directory(out);
  std::string csv = "scheme,tau,err_X2,energy_err,mass_err\n";
  for (const auto& p : result.points)
    csv += std::string(to_string(p.scheme)) + "," + format_double(p.tau) + "," + format_double(p.err_x2) + "," +
           format_double(p.energy_err) + "," + format_double(p.mass_err) + "\n";
  csv += "slope_lie,," + format_double(result.lie_x2_slope) + "," + format_double(result.lie_energy_slope) + ",\n";
  csv += "slope_strang,," + format_double(result.strang_x2_slope) + "," +
         format_double(result.strang_energy_slope) + ",\n";
  write_text(out / "convergence.csv", csv);

  auto meta = base_metadata(cfg);
  meta["actual_T"] = result.horizon;
  ordered_json runs = ordered_json::array();
  for (const auto& p : result.points) {
    SchemeConfig sc = cfg.scheme;
    sc.tau = p.tau;
    runs.push_back({{"scheme", std::string(to_string(p.scheme))},
                    {"tau", p.tau},
                    {"steps", sc.steps()},
                    {"actual_T", sc.actual_horizon()},
                    {"err_X2", p.err_x2},
                    {"energy_err", p.energy_err},
                    {"mass_err", p.mass_err}});
  }
  meta["runs"] = runs;
  auto nan_safe = [](double x) { return std::isnan(x) ? ordered_json(nullptr) : ordered_json(x); };
  meta["slopes"] = {{"lie_X2", nan_safe(result.lie_x2_slope)},
                    {"strang_X2", nan_safe(result.strang_x2_slope)},
                    {"lie_energy", nan_safe(result.lie_energy_slope)},
                    {"strang_energy", nan_safe(result.strang_energy_slope)}};
  if (result.resolution) {
    meta["resolution_check"] = {{"N", result.resolution->points},
                                {"N_fine", result.resolution->fine_points},
                                {"spatial_error_X2", result.resolution->spatial_error},
                                {"min_splitting_error_X2", result.resolution->min_splitting_error},
                                {"passed", result.resolution->passed}};
  } else {
    meta["resolution_check"] = "not_run";
  }
  write_text(out / "run_metadata.json", meta.dump(2) + "\n");
  return 0;
}

int write_conservation(const RunConfig& cfg, const std::filesystem::path& out) {
  const auto result = run_soliton_conservation(cfg);
  ensure_directory(out);
  std::string summary = "scheme,tau,max_mass_drift,max_energy_drift\n";
  auto meta = base_metadata(cfg);
  meta["actual_T"] = cfg.scheme.actual_horizon();
  meta["resolution_check"] = "not_run";
  for (const auto& run : result.runs) {
    const std::string name(to_string(run.scheme));
    summary += name + "," + format_double(cfg.scheme.tau) + "," + format_double(run.max_mass_drift) + "," +
               format_double(run.max_energy_drift) + "\n";
    auto sub = base_metadata(cfg);
    sub["scheme"] = name;
    sub["actual_T"] = run.trajectory.horizon;
    sub["resolution_check"] = "not_run";
    sub["max_mass_drift"] = run.max_mass_drift;
    sub["max_energy_drift"] = run.max_energy_drift;
    write_outputs(run.trajectory, out / name, sub.dump(2));
    meta[name] = {{"max_mass_drift", run.max_mass_drift}, {"max_energy_drift", run.max_energy_drift}};
  }
  write_text(out / "conservation_summary.csv", summary);
  write_text(out / "run_metadata.json", meta.dump(2) + "\n");
  return 0;
}

ordered_json groundstate_json(const MinimizeResult& gs, const MinimizeConfig& cfg) {
  return {{"converged", gs.converged},
          {"iterations", gs.iterations},
          {"final_gradient_norm", gs.gradient_norm},
          {"initial_gradient_norm", gs.initial_gradient_norm},
          {"final_energy", gs.energy},
          {"grad_tol", cfg.grad_tol},
          {"max_iters", cfg.max_iters},
          {"lbfgs_memory", cfg.lbfgs_memory}};
}

int write_vortex(const RunConfig& cfg, const std::filesystem::path& out) {
  const auto result = run_vortex_case(cfg);
  ensure_directory(out / "fields");
  std::string csv = "t,i,j,x1,x2,charge,density\n";
  for (const auto& frame : result.frames)
    for (const auto& e : frame.report.events)
      csv += format_double(frame.t) + "," + std::to_string(e.i) + "," + std::to_string(e.j) + "," +
             format_double(e.x) + "," + format_double(e.y) + "," + std::to_string(e.charge) + "," +
             format_double(e.density) + "\n";
  write_text(out / "vortices.csv", csv);
  write_snapshot(out / "fields" / "groundstate", result.groundstate.minimizer, 0.0);
  for (const auto& snap : result.trajectory.snapshots) {
    char name[32];
    std::snprintf(name, sizeof name, "V_%07d", snap.step);
    write_snapshot(out / "fields" / name, eval_potential(cfg.potential, snap.t, snap.u.grid()), snap.t);
  }
  auto meta = base_metadata(cfg);
  meta["actual_T"] = cfg.scheme.actual_horizon();
  meta["resolution_check"] = "not_run";
  meta["groundstate"] = groundstate_json(result.groundstate, cfg.minimize);
  meta["aborted"] = result.aborted;
  if (result.aborted) meta["abort_message"] = result.abort_message;
  write_outputs(result.trajectory, out, meta.dump(2));
  return result.aborted ? 3 : 0;
}

int write_custom(const RunConfig& cfg, const std::filesystem::path& out) {
  cfg.validate();
  const Grid grid = cfg.grid.build();
  MinimizeResult gs{Field(grid)};
  const FlowState initial = initial_state(cfg, grid, &gs);
  auto meta = base_metadata(cfg);
  meta["actual_T"] = cfg.scheme.actual_horizon();
  meta["resolution_check"] = "not_run";
  if (cfg.initial.kind == InitialKind::groundstate) meta["groundstate"] = groundstate_json(gs, cfg.minimize);
  try {
    const auto traj = evolve(initial, cfg.scheme, cfg.potential, cfg.params);
    write_outputs(traj, out, meta.dump(2));
    return 0;
  } catch (const TrajectoryAborted& e) {
    meta["aborted"] = true;
    meta["abort_message"] = e.what();
    write_outputs(e.partial(), out, meta.dump(2));
    return 3;
  }
}

}  // namespace

int run_scenario(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  switch (cfg.scenario) {
    case Scenario::soliton_convergence:
    case Scenario::perturbed_convergence:
      return write_convergence(cfg, out_dir);
    case Scenario::soliton_conservation:
      return write_conservation(cfg, out_dir);
    case Scenario::vortex_case_i:
    case Scenario::vortex_case_ii:
      return write_vortex(cfg, out_dir);
    case Scenario::custom:
      return write_custom(cfg, out_dir);
  }
  return 2;
}

int run_groundstate(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  cfg.validate();
  const Grid grid = cfg.grid.build();
  const auto gs = minimize(grid, cfg.potential, cfg.params, cfg.minimize);
  ensure_directory(out_dir / "fields");
  write_snapshot(out_dir / "fields" / "groundstate", gs.minimizer, 0.0);
  write_text(out_dir / "groundstate_report.json", groundstate_json(gs, cfg.minimize).dump(2) + "\n");
  auto meta = base_metadata(cfg);
  meta["actual_T"] = 0.0;
  meta["resolution_check"] = "not_run";
  meta["groundstate"] = groundstate_json(gs, cfg.minimize);
  write_text(out_dir / "run_metadata.json", meta.dump(2) + "\n");
  return 0;
}

}  // namespace gpsplit
