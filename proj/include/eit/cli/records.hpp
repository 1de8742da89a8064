#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eit/cli/run_config.hpp"
#include "eit/optics.hpp"

namespace eit::cli {

inline constexpr std::string_view kCsvHeader = "delta_mhz,n,alpha,n_g,v_g_m_per_s,rho11,rho22,rho33,re_coh,im_coh";

struct SweepMetadata {
  std::string tool_version;
  Configuration config = Configuration::Lambda;
  double g_probe = 0.0, g_pump = 0.0, gamma_a = 0.0, gamma_b = 0.0, delta_pump = 0.0;
  double sweep_min = 0.0, sweep_max = 0.0;
  int sweep_points = 0;
  double n0 = 0.0, mu = 0.0, omega_probe = 0.0;
  optics::AngularConvention angular_convention = optics::AngularConvention::PlainMHz;
  BackendChoice backend = BackendChoice::Numeric;
  std::string config_hash;
  // Max |rho_numeric - rho_analytic| over the sweep, only for backend=both.
  std::optional<double> backend_discrepancy;

  bool operator==(const SweepMetadata&) const = default;
};

// One row per grid point. A failed point has every column but delta_mhz set
// to NaN and a non-empty error.
struct RecordRow {
  double delta_mhz = 0.0;
  double n = 0.0, alpha = 0.0, n_g = 0.0, v_g = 0.0;
  double rho11 = 0.0, rho22 = 0.0, rho33 = 0.0;
  double re_coh = 0.0, im_coh = 0.0;
  std::string error;

  bool failed() const { return !error.empty(); }
};

/// Field-wise equality with NaN == NaN.
bool same(const RecordRow& a, const RecordRow& b);

struct SweepRecord {
  SweepMetadata metadata;
  std::vector<RecordRow> rows;
};
bool same(const SweepRecord& a, const SweepRecord& b);

SweepMetadata make_metadata(const RunConfig& cfg);
RecordRow to_row(const optics::SweepRow& row);
SweepRecord make_record(const RunConfig& cfg, const optics::Sweep& sweep);

/// Shortest-round-trip rendering of a double ("nan", "inf", "-inf" for
/// non-finite values).
std::string format_double(double v);
double parse_double(std::string_view text);

std::string emit_csv(const SweepRecord& r);
SweepRecord parse_csv(std::string_view text);
std::string emit_json(const SweepRecord& r);
SweepRecord parse_json(std::string_view text);

std::string emit(const SweepRecord& r, OutputFormat f);
SweepRecord parse(std::string_view text, OutputFormat f);

}  // namespace eit::cli
