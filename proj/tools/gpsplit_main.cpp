// gpsplit: run splitting experiments for the Gross-Pitaevskii equation from
// JSON configurations.
//
//   gpsplit run <config.json> [--out DIR]
//   gpsplit sweep <config.json> [--out DIR]
//   gpsplit groundstate <config.json> [--out DIR]
//
// Exit codes: 0 success, 1 I/O or internal failure, 2 invalid configuration,
// 3 blow-up guard abort.

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "gpsplit/errors.hpp"
#include "gpsplit/experiments.hpp"

namespace {

enum class Verb { run, sweep, groundstate };

int execute(Verb verb, const std::string& config_path, const std::string& out_flag) {
  const gpsplit::RunConfig cfg = gpsplit::load_run_config(config_path);
  const std::filesystem::path out = std::filesystem::path(out_flag.empty() ? cfg.output_dir : out_flag);
  switch (verb) {
    case Verb::run:
      return gpsplit::run_scenario(cfg, out);
    case Verb::sweep:
      if (cfg.scenario != gpsplit::Scenario::soliton_convergence &&
          cfg.scenario != gpsplit::Scenario::perturbed_convergence &&
          cfg.scenario != gpsplit::Scenario::soliton_conservation)
        throw gpsplit::ValidationError("sweep expects a convergence or conservation scenario");
      return gpsplit::run_scenario(cfg, out);
    case Verb::groundstate:
      return gpsplit::run_groundstate(cfg, out);
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie/Strang splitting for the Gross-Pitaevskii equation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  Verb verb = Verb::run;

  auto add_verb = [&](const char* name, const char* help, Verb v) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (overrides the config's \"output\")");
    sub->callback([&verb, v] { verb = v; });
  };
  add_verb("run", "run the configured scenario", Verb::run);
  add_verb("sweep", "run a step-size sweep (convergence or conservation scenarios)", Verb::sweep);
  add_verb("groundstate", "compute the energy minimiser with V(0, .)", Verb::groundstate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const int code = execute(verb, config_path, out_dir);
    if (code == 3) std::cerr << "gpsplit: run aborted by the blow-up guard (see run_metadata.json)\n";
    return code;
  } catch (const gpsplit::ValidationError& e) {
    std::cerr << "gpsplit: invalid configuration: " << e.what() << '\n';
    return 2;
  } catch (const gpsplit::BlowUpError& e) {
    std::cerr << "gpsplit: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "gpsplit: " << e.what() << '\n';
    return 1;
  }
}
