#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "eit/density_matrix.hpp"
#include "eit/errors.hpp"
#include "eit/model.hpp"

namespace eit::optics {

/// How a frequency quoted in MHz enters the group index: as 1e6 s^-1
/// (plain_mhz) or as 2*pi*1e6 rad/s (two_pi_mhz).
enum class AngularConvention { PlainMHz, TwoPiMHz };

std::string_view to_string(AngularConvention c);
AngularConvention parse_angular_convention(std::string_view name);
double angular_factor(AngularConvention c);

// SI values; the dipole moment defaults to the Bohr magneton's numerical value.
struct OpticalConstants {
  double n0 = 1e21;                  // m^-3
  double mu = 9.2740100783e-24;      // SI
  double epsilon0 = 8.8541878128e-12;
  double hbar = 1.054571817e-34;
  double c = 299792458.0;            // m/s
  double omega_probe = 2.37e9;       // MHz
  AngularConvention angular_convention = AngularConvention::PlainMHz;

  /// N0 mu^2 / (2 eps0 hbar).
  double prefactor() const { return n0 * mu * mu / (2.0 * epsilon0 * hbar); }

  void validate() const;
};

/// Constants for the reference parameter set of a configuration (carrier
/// frequency differs per system).
OpticalConstants reference_constants(Configuration c,
                                     AngularConvention conv = AngularConvention::PlainMHz);

/// Tr[rho lambda_r]: lambda_4 for lambda/vee, lambda_6 for cascade.
double dispersion_projection(const DensityMatrix& rho, Configuration c);
/// Tr[rho lambda_i]: lambda_5 for lambda/vee, lambda_7 for cascade.
double absorption_projection(const DensityMatrix& rho, Configuration c);
/// <lower|rho|upper> on the probe transition.
Complex probe_coherence(const DensityMatrix& rho, Configuration c);

double refractive_index(const DensityMatrix& rho, const OpticalConstants& k, Configuration c);
/// In the same prefactor scale as n - 1 (not converted to m^-1).
double absorption(const DensityMatrix& rho, const OpticalConstants& k, Configuration c);

/// n_g = 1 + prefactor * omega_probe * d Tr[rho lambda_r] / d Delta.
double group_index_from_slope(const OpticalConstants& k, double slope_per_mhz);

enum class Backend { Numeric, Analytic };
std::string_view to_string(Backend b);

DensityMatrix solve_steady_state(const SystemParams& p, Backend backend);

struct SpectralPoint {
  double delta = 0.0;  // MHz
  double n = 1.0;
  double alpha = 0.0;
  double n_g = 1.0;
  double v_g = 0.0;  // m/s
  double rho11 = 0.0, rho22 = 0.0, rho33 = 0.0;
  Complex probe_coherence{};
  double dispersion = 0.0;        // Tr[rho lambda_r]
  double absorption = 0.0;        // Tr[rho lambda_i]
  double dispersion_slope = 0.0;  // d dispersion / d Delta, 1/MHz
  bool one_sided = false;         // slope from a one-sided difference (grid endpoint)
};

struct PointFailure {
  double delta = 0.0;
  ErrorKind kind = ErrorKind::SingularSolve;
  std::string message;
};

using SweepRow = std::variant<SpectralPoint, PointFailure>;

struct Sweep {
  std::vector<SweepRow> rows;  // ordered by delta

  bool ok() const;
  std::vector<PointFailure> failures() const;
  /// All points; throws the first failure as an Error if any row failed.
  std::vector<SpectralPoint> points() const;
};

struct SweepRequest {
  double delta_min = -30.0;
  double delta_max = 30.0;
  int points = 201;
  Backend backend = Backend::Numeric;
};

std::vector<double> uniform_grid(double lo, double hi, int points);

/// Parallel over grid points (OpenMP); output order is the grid order and
/// identical to sweep_serial.
Sweep sweep(const SystemParams& p, const OpticalConstants& k, const SweepRequest& req);
/// Single-threaded reference implementation.
Sweep sweep_serial(const SystemParams& p, const OpticalConstants& k, const SweepRequest& req);

/// Relative difference allowed between the h and 2h central-difference
/// group velocities.
inline constexpr double kRichardsonTol = 1e-3;

/// Group velocity (m/s) at grid point `at`, which needs two valid
/// neighbours on each side. Throws Error(GridTooCoarse) if the spacing-h and
/// spacing-2h estimates differ by more than kRichardsonTol relative.
double group_velocity(const std::vector<SpectralPoint>& sweep, const OpticalConstants& k, double at);

struct CalibrationEntry {
  Configuration config;
  AngularConvention convention;
  double v_g = 0.0;         // m/s, numeric backend
  double v_g_analytic = 0.0;  // m/s, same stencil on the closed-form backend
  double target = 0.0;      // m/s
  double relative_error = 0.0;
};

struct CalibrationReport {
  std::vector<CalibrationEntry> entries;  // 3 configurations x 2 conventions
  AngularConvention chosen = AngularConvention::PlainMHz;
  bool lambda_within_tolerance = false;  // |rel err| <= 10 % for the chosen convention

  const CalibrationEntry& entry(Configuration c, AngularConvention conv) const;
};

/// Resonant group velocities quoted for the reference parameter sets, m/s.
double reference_group_velocity(Configuration c);

/// Evaluates v_g(0) for all reference sets under both conventions and picks
/// the convention closest to the lambda reference value.
CalibrationReport calibrate();

}  // namespace eit::optics
