#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gpsplit/errors.hpp"
#include "gpsplit/experiments.hpp"
#include "json.hpp"

namespace gpsplit {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

template <class T>
void read_if(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) out = it->get<T>();
}

void require_object(const json& j, const char* what) {
  if (!j.is_object()) throw ValidationError(std::string(what) + " must be a JSON object");
}

void read_grid(const json& j, GridSpec& g) {
  require_object(j, "grid");
  read_if(j, "dim", g.dim);
  read_if(j, "L", g.half_width);
  read_if(j, "N", g.points);
  if (auto it = j.find("bc"); it != j.end()) g.bc = boundary_kind_from_string(it->get<std::string>());
}

void read_background(const json& j, Background& bg) {
  require_object(j, "background");
  std::string kind = std::holds_alternative<DarkSoliton>(bg) ? "dark_soliton" : "constant";
  read_if(j, "kind", kind);
  if (kind == "constant") {
    ConstantBackground c = std::holds_alternative<ConstantBackground>(bg) ? std::get<ConstantBackground>(bg)
                                                                          : ConstantBackground{};
    if (auto it = j.find("value"); it != j.end()) {
      if (!it->is_array() || it->size() != 2) throw ValidationError("background.value must be [re, im]");
      c.value = {(*it)[0].get<double>(), (*it)[1].get<double>()};
    }
    bg = c;
  } else if (kind == "dark_soliton") {
    DarkSoliton s = std::holds_alternative<DarkSoliton>(bg) ? std::get<DarkSoliton>(bg) : DarkSoliton{};
    read_if(j, "c", s.speed);
    bg = s;
  } else {
    throw ValidationError("unknown background kind '" + kind + "'");
  }
}

std::string potential_kind(const Potential& pot) {
  return std::visit(overloaded{
                        [](const ZeroPotential&) { return std::string("zero"); },
                        [](const StaticGaussian&) { return std::string("static_gaussian"); },
                        [](const MovingGaussian&) { return std::string("moving_gaussian"); },
                        [](const RotatingGaussian&) { return std::string("rotating_gaussian"); },
                    },
                    pot);
}

template <class T>
T current_or_default(const Potential& pot) {
  return std::holds_alternative<T>(pot) ? std::get<T>(pot) : T{};
}

void read_potential(const json& j, Potential& pot) {
  require_object(j, "potential");
  std::string kind = potential_kind(pot);
  read_if(j, "kind", kind);
  if (kind == "zero") {
    pot = ZeroPotential{};
  } else if (kind == "static_gaussian") {
    auto g = current_or_default<StaticGaussian>(pot);
    read_if(j, "V0", g.amplitude);
    read_if(j, "gamma", g.gamma);
    if (auto it = j.find("center"); it != j.end()) {
      if (!it->is_array() || it->size() != 2) throw ValidationError("potential.center must be [x1, x2]");
      g.center_x = (*it)[0].get<double>();
      g.center_y = (*it)[1].get<double>();
    }
    pot = g;
  } else if (kind == "moving_gaussian") {
    auto g = current_or_default<MovingGaussian>(pot);
    read_if(j, "V0", g.amplitude);
    read_if(j, "gamma", g.gamma);
    read_if(j, "a", g.speed);
    pot = g;
  } else if (kind == "rotating_gaussian") {
    auto g = current_or_default<RotatingGaussian>(pot);
    read_if(j, "V0", g.amplitude);
    read_if(j, "gamma", g.gamma);
    read_if(j, "a", g.angular_speed);
    read_if(j, "r0", g.radius);
    pot = g;
  } else {
    throw ValidationError("unknown potential kind '" + kind + "'");
  }
}

void read_scheme(const json& j, SchemeConfig& s) {
  require_object(j, "scheme");
  if (auto it = j.find("scheme"); it != j.end()) s.scheme = scheme_from_string(it->get<std::string>());
  if (auto it = j.find("form"); it != j.end()) s.form = form_from_string(it->get<std::string>());
  read_if(j, "tau", s.tau);
  read_if(j, "T", s.horizon);
  if (auto it = j.find("rule"); it != j.end()) {
    if (it->is_null())
      s.rule.reset();
    else
      s.rule = quadrature_rule_from_string(it->get<std::string>());
  }
  read_if(j, "diag_every", s.diag_every);
  read_if(j, "snapshot_every", s.snapshot_every);
}

void read_sweep(const json& j, SweepSpec& s) {
  require_object(j, "sweep");
  read_if(j, "taus", s.taus);
  read_if(j, "tau_ref", s.tau_ref);
  if (auto it = j.find("schemes"); it != j.end()) {
    s.schemes.clear();
    for (const auto& name : *it) s.schemes.push_back(scheme_from_string(name.get<std::string>()));
  }
}

void read_minimize(const json& j, MinimizeConfig& m) {
  require_object(j, "groundstate");
  read_if(j, "grad_tol", m.grad_tol);
  read_if(j, "max_iters", m.max_iters);
  read_if(j, "lbfgs_memory", m.lbfgs_memory);
}

void read_initial(const json& j, InitialSpec& init) {
  require_object(j, "initial");
  if (auto it = j.find("kind"); it != j.end()) {
    const auto kind = it->get<std::string>();
    if (kind == "background")
      init.kind = InitialKind::background;
    else if (kind == "perturbed")
      init.kind = InitialKind::perturbed;
    else if (kind == "groundstate")
      init.kind = InitialKind::groundstate;
    else
      throw ValidationError("unknown initial kind '" + kind + "'");
  }
  read_if(j, "amplitude", init.amplitude);
}

std::string_view to_string(InitialKind kind) {
  switch (kind) {
    case InitialKind::background: return "background";
    case InitialKind::perturbed: return "perturbed";
    case InitialKind::groundstate: return "groundstate";
  }
  return "background";
}

ordered_json potential_json(const Potential& pot) {
  ordered_json j;
  j["kind"] = potential_kind(pot);
  std::visit(overloaded{
                 [](const ZeroPotential&) {},
                 [&](const StaticGaussian& g) {
                   j["V0"] = g.amplitude;
                   j["gamma"] = g.gamma;
                   j["center"] = {g.center_x, g.center_y};
                 },
                 [&](const MovingGaussian& g) {
                   j["V0"] = g.amplitude;
                   j["gamma"] = g.gamma;
                   j["a"] = g.speed;
                 },
                 [&](const RotatingGaussian& g) {
                   j["V0"] = g.amplitude;
                   j["gamma"] = g.gamma;
                   j["a"] = g.angular_speed;
                   j["r0"] = g.radius;
                 },
             },
             pot);
  return j;
}

}  // namespace

std::string_view to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::soliton_convergence: return "soliton_convergence";
    case Scenario::soliton_conservation: return "soliton_conservation";
    case Scenario::perturbed_convergence: return "perturbed_convergence";
    case Scenario::vortex_case_i: return "vortex_case_i";
    case Scenario::vortex_case_ii: return "vortex_case_ii";
    case Scenario::custom: return "custom";
  }
  return "custom";
}

Scenario scenario_from_string(std::string_view name) {
  for (auto s : {Scenario::soliton_convergence, Scenario::soliton_conservation,
                 Scenario::perturbed_convergence, Scenario::vortex_case_i, Scenario::vortex_case_ii,
                 Scenario::custom})
    if (to_string(s) == name) return s;
  throw ValidationError("unknown scenario '" + std::string(name) + "'");
}

RunConfig default_config(Scenario scenario) {
  RunConfig cfg;
  cfg.scenario = scenario;
  switch (scenario) {
    case Scenario::soliton_convergence:
    case Scenario::perturbed_convergence:
    case Scenario::soliton_conservation:
      cfg.grid = {1, 60.0, 1023, BoundaryKind::dirichlet};
      cfg.background = DarkSoliton{1.3};
      cfg.potential = ZeroPotential{};
      cfg.scheme.horizon = 1.0;
      cfg.scheme.tau = scenario == Scenario::soliton_conservation ? 1e-2 : 1e-3;
      if (scenario == Scenario::perturbed_convergence) cfg.initial = {InitialKind::perturbed, 0.5};
      break;
    case Scenario::vortex_case_i:
    case Scenario::vortex_case_ii:
      cfg.grid = {2, 5.0, 256, BoundaryKind::periodic};
      cfg.params = {0.2, 15.0};
      cfg.background = ConstantBackground{};
      cfg.initial = {InitialKind::groundstate, 0.0};
      cfg.scheme.scheme = Scheme::strang;
      cfg.scheme.tau = 1e-3;
      cfg.scheme.diag_every = 50;
      if (scenario == Scenario::vortex_case_i) {
        cfg.potential = MovingGaussian{50.0, 10.0, 1.0};
        cfg.scheme.horizon = 1.0;
        cfg.scheme.snapshot_every = 200;
      } else {
        cfg.potential = RotatingGaussian{50.0, 10.0, 1.0, 0.5};
        cfg.scheme.horizon = 4.0;
        cfg.scheme.snapshot_every = 500;
      }
      cfg.check_resolution = false;
      break;
    case Scenario::custom:
      cfg.grid = {1, 20.0, 256, BoundaryKind::periodic};
      cfg.check_resolution = false;
      break;
  }
  return cfg;
}

void RunConfig::validate() const {
  const Grid g = grid.build();
  params.validate();
  gpsplit::validate(background);
  if (std::holds_alternative<DarkSoliton>(background) && g.dim() != 1)
    throw ValidationError("dark soliton background requires a 1D grid");
  scheme.validate();
  minimize.validate();
  if (threads < 0) throw ValidationError("threads must be non-negative");
  if (initial.kind == InitialKind::groundstate && g.bc() != BoundaryKind::periodic)
    throw ValidationError("ground states need a periodic grid");
  if (g.bc() == BoundaryKind::dirichlet && !is_zero(potential))
    throw ValidationError("the Dirichlet backend supports V = 0 only");

  for (std::size_t i = 0; i < sweep.taus.size(); ++i) {
    if (!(sweep.taus[i] > 0.0) || sweep.taus[i] > 1.0)
      throw ValidationError("sweep step sizes must lie in (0, 1]");
    if (i > 0 && !(sweep.taus[i] < sweep.taus[i - 1]))
      throw ValidationError("sweep step sizes must be strictly decreasing");
  }
  if (!(sweep.tau_ref > 0.0)) throw ValidationError("tau_ref must be positive");

  switch (scenario) {
    case Scenario::soliton_convergence:
    case Scenario::perturbed_convergence:
      if (sweep.taus.size() < 3) throw ValidationError("a convergence sweep needs at least 3 step sizes");
      if (sweep.schemes.empty()) throw ValidationError("sweep.schemes must not be empty");
      [[fallthrough]];
    case Scenario::soliton_conservation:
      if (g.dim() != 1) throw ValidationError(std::string(to_string(scenario)) + " requires a 1D grid");
      if (!is_zero(potential)) throw ValidationError(std::string(to_string(scenario)) + " requires V = 0");
      if (scenario == Scenario::soliton_convergence && !std::holds_alternative<DarkSoliton>(background))
        throw ValidationError("soliton_convergence requires a dark_soliton background");
      if (scenario == Scenario::soliton_convergence && initial.kind != InitialKind::background)
        throw ValidationError("soliton_convergence starts from the soliton itself");
      break;
    case Scenario::vortex_case_i:
    case Scenario::vortex_case_ii:
      if (g.dim() != 2 || g.bc() != BoundaryKind::periodic)
        throw ValidationError("vortex scenarios require a periodic 2D grid");
      break;
    case Scenario::custom:
      break;
  }
}

RunConfig parse_run_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid JSON configuration: ") + e.what());
  }
  require_object(j, "configuration");
  static const char* known[] = {"scenario", "grid", "params", "background", "initial", "potential",
                                "scheme", "sweep", "groundstate", "vortex_density_threshold",
                                "check_resolution", "seed", "output", "threads"};
  for (const auto& item : j.items()) {
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return item.key() == k; }) ==
        std::end(known))
      throw ValidationError("unknown configuration key '" + item.key() + "'");
  }
  try {
    RunConfig cfg = default_config(scenario_from_string(j.value("scenario", std::string("custom"))));
    if (auto it = j.find("grid"); it != j.end()) read_grid(*it, cfg.grid);
    if (auto it = j.find("params"); it != j.end()) {
      require_object(*it, "params");
      read_if(*it, "eps", cfg.params.eps);
      read_if(*it, "m", cfg.params.mass);
    }
    if (auto it = j.find("background"); it != j.end()) read_background(*it, cfg.background);
    if (auto it = j.find("initial"); it != j.end()) read_initial(*it, cfg.initial);
    if (auto it = j.find("potential"); it != j.end()) read_potential(*it, cfg.potential);
    if (auto it = j.find("scheme"); it != j.end()) read_scheme(*it, cfg.scheme);
    if (auto it = j.find("sweep"); it != j.end()) read_sweep(*it, cfg.sweep);
    if (auto it = j.find("groundstate"); it != j.end()) read_minimize(*it, cfg.minimize);
    if (auto it = j.find("vortex_density_threshold"); it != j.end() && !it->is_null())
      cfg.vortex_density_threshold = it->get<double>();
    read_if(j, "check_resolution", cfg.check_resolution);
    read_if(j, "seed", cfg.seed);
    read_if(j, "output", cfg.output_dir);
    read_if(j, "threads", cfg.threads);
    cfg.validate();
    return cfg;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("configuration type error: ") + e.what());
  }
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read configuration file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str());
}

std::string to_json(const RunConfig& cfg) {
  ordered_json j;
  j["scenario"] = std::string(to_string(cfg.scenario));
  j["grid"] = {{"dim", cfg.grid.dim},
               {"L", cfg.grid.half_width},
               {"N", cfg.grid.points},
               {"bc", std::string(to_string(cfg.grid.bc))}};
  j["params"] = {{"eps", cfg.params.eps}, {"m", cfg.params.mass}};
  std::visit(overloaded{
                 [&](const ConstantBackground& c) {
                   j["background"] = {{"kind", "constant"}, {"value", {c.value.real(), c.value.imag()}}};
                 },
                 [&](const DarkSoliton& s) { j["background"] = {{"kind", "dark_soliton"}, {"c", s.speed}}; },
             },
             cfg.background);
  j["initial"] = {{"kind", std::string(to_string(cfg.initial.kind))}, {"amplitude", cfg.initial.amplitude}};
  j["potential"] = potential_json(cfg.potential);
  ordered_json scheme;
  scheme["scheme"] = std::string(to_string(cfg.scheme.scheme));
  scheme["form"] = std::string(to_string(cfg.scheme.form));
  scheme["tau"] = cfg.scheme.tau;
  scheme["T"] = cfg.scheme.horizon;
  scheme["rule"] = std::string(to_string(cfg.scheme.resolved_rule()));
  scheme["diag_every"] = cfg.scheme.diag_every;
  scheme["snapshot_every"] = cfg.scheme.snapshot_every;
  j["scheme"] = scheme;
  ordered_json schemes = ordered_json::array();
  for (auto s : cfg.sweep.schemes) schemes.push_back(std::string(to_string(s)));
  j["sweep"] = {{"taus", cfg.sweep.taus}, {"schemes", schemes}, {"tau_ref", cfg.sweep.tau_ref}};
  j["groundstate"] = {{"grad_tol", cfg.minimize.grad_tol},
                      {"max_iters", cfg.minimize.max_iters},
                      {"lbfgs_memory", cfg.minimize.lbfgs_memory}};
  j["vortex_density_threshold"] =
      cfg.vortex_density_threshold ? ordered_json(*cfg.vortex_density_threshold) : ordered_json(nullptr);
  j["check_resolution"] = cfg.check_resolution;
  j["seed"] = cfg.seed;
  j["output"] = cfg.output_dir;
  j["threads"] = cfg.threads;
  return j.dump(2);
}

}  // namespace gpsplit
