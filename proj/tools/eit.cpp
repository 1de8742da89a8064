#include <iostream>

#include "CLI11.hpp"
#include "eit/cli/commands.hpp"
#include "eit/version.hpp"

int main(int argc, char** argv) {
  using namespace eit::cli;
  CLI::App app{"Steady states, optical response and dark states of driven three-level atoms"};
  app.set_version_flag("--version", std::string(eit::kVersion));
  app.require_subcommand(1);

  SweepOptions sweep;
  auto* s = app.add_subcommand("sweep", "probe-detuning sweep to CSV/JSON");
  s->add_option("config", sweep.config, "run config (JSON)")->required()->check(CLI::ExistingFile);
  s->add_option("-o,--output", sweep.output, "override output.path");

  SteadyOptions steady;
  auto* st = app.add_subcommand("steady", "print the steady state at one detuning");
  st->add_option("config", steady.config, "run config (JSON)")->required()->check(CLI::ExistingFile);
  st->add_option("--delta", steady.delta, "probe detuning, MHz")->capture_default_str();

  EvolveOptions evolve;
  auto* ev = app.add_subcommand("evolve", "RK4 time evolution to CSV");
  ev->add_option("config", evolve.config, "run config (JSON)")->required()->check(CLI::ExistingFile);
  ev->add_option("--delta", evolve.delta, "probe detuning, MHz")->capture_default_str();
  ev->add_option("--t-end", evolve.t_end, "end time, us")->required();
  ev->add_option("--dt", evolve.dt, "maximum step, us (default: largest stable step)");
  ev->add_option("--rho0", evolve.rho0, "ground, mixed, or a JSON file with re/im 3x3 arrays")->capture_default_str();
  ev->add_option("--samples", evolve.samples, "rows in the trajectory file")->capture_default_str();
  ev->add_option("-o,--output", evolve.output, "trajectory file")->capture_default_str();

  DarkstateOptions dark;
  auto* ds = app.add_subcommand("darkstate", "resonance populations and mixing angle");
  ds->add_option("config", dark.config, "run config (JSON)")->required()->check(CLI::ExistingFile);

  auto* cal = app.add_subcommand("calibrate", "fix the angular convention against the reference group velocities");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  const Streams io{std::cout, std::cerr};
  if (*s) return cmd_sweep(sweep, io);
  if (*st) return cmd_steady(steady, io);
  if (*ev) return cmd_evolve(evolve, io);
  if (*ds) return cmd_darkstate(dark, io);
  if (*cal) return cmd_calibrate(io);
  return kExitInvalid;
}
