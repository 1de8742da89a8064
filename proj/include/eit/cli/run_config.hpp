#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "eit/model.hpp"
#include "eit/optics.hpp"

namespace eit::cli {

// Raised for anything wrong with a config document; `field` is the dotted
// path of the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

enum class BackendChoice { Numeric, Analytic, Both };
std::string_view to_string(BackendChoice b);

enum class OutputFormat { Csv, Json };
std::string_view to_string(OutputFormat f);

struct SweepRange {
  double min = 0.0;
  double max = 0.0;
  int points = 0;
};

struct OpticsSettings {
  double n0 = 0.0;
  double mu = 0.0;
  double omega_probe = 0.0;
  std::optional<optics::AngularConvention> angular_convention;  // absent: use calibration
};

struct OutputSpec {
  std::string path;
  OutputFormat format = OutputFormat::Csv;
};

struct RunConfig {
  SystemParams params;
  SweepRange sweep;
  OpticsSettings optics;
  BackendChoice backend = BackendChoice::Numeric;
  OutputSpec output;

  /// Full constants; requires the angular convention to be resolved.
  optics::OpticalConstants constants() const;
};

/// Parses and validates a config document (JSON syntax). Unknown keys and
/// missing required keys are rejected; only delta_pump (0) and
/// optics.angular_convention may be omitted.
RunConfig parse_run_config(std::string_view text);
RunConfig load_run_config(const std::filesystem::path& path);

/// Canonical JSON form, with every default materialized.
std::string canonical_json(const RunConfig& cfg);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

/// "fnv1a64:" + 16 hex digits over canonical_json(cfg) without the output
/// section.
std::string config_hash(const RunConfig& cfg);

}  // namespace eit::cli
