#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "eit/cli/run_config.hpp"
#include "eit/optics.hpp"

namespace eit::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalid = 1,        // bad config or arguments, StepTooLarge
  kExitSolverFailure = 2,  // at least one steady-state solve failed
  kExitDiscrepancy = 3,    // numeric and closed-form backends disagree
  kExitNotConverged = 4,   // time evolution did not reach the steady state
};

/// Backends disagreeing by more than this (max |delta rho|) give exit 3.
inline constexpr double kBackendTolerance = 1e-6;
/// Final evolved state further than this from the steady state gives exit 4.
inline constexpr double kConvergenceTolerance = 1e-6;

inline constexpr std::string_view kOutputDirEnv = "EIT_OUTPUT_DIR";
inline constexpr std::string_view kCalibrationFile = "calibration.json";

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

/// $EIT_OUTPUT_DIR if set and non-empty, else the working directory.
std::filesystem::path output_dir();
/// Relative paths are resolved against output_dir().
std::filesystem::path resolve_output(const std::string& path);

/// Fills in the angular convention: from calibration.json in output_dir() if
/// readable, otherwise by running the calibration in-process.
void resolve_convention(RunConfig& cfg, Streams io);

struct SweepOptions {
  std::filesystem::path config;
  std::optional<std::string> output;  // overrides output.path
};
int cmd_sweep(const SweepOptions& opt, Streams io);

struct SteadyOptions {
  std::filesystem::path config;
  double delta = 0.0;
};
int cmd_steady(const SteadyOptions& opt, Streams io);

struct EvolveOptions {
  std::filesystem::path config;
  double delta = 0.0;
  double t_end = 0.0;               // us
  std::optional<double> dt;         // us; default: the largest stable step
  std::string rho0 = "ground";      // ground | mixed | path to a JSON matrix
  int samples = 1001;
  std::string output = "evolve.csv";
};
int cmd_evolve(const EvolveOptions& opt, Streams io);

/// Reads {"re": [[..],[..],[..]], "im": [[..],[..],[..]]} with rows and
/// columns indexed by level 1, 2, 3.
DensityMatrix load_density_matrix(const std::filesystem::path& path);

struct DarkstateOptions {
  std::filesystem::path config;
};
int cmd_darkstate(const DarkstateOptions& opt, Streams io);

int cmd_calibrate(Streams io);

std::string calibration_json(const optics::CalibrationReport& r);

}  // namespace eit::cli
