#include "eit/optics.hpp"

#include <cmath>
#include <numbers>

#include <fmt/core.h>

#include "eit/analytic.hpp"
#include "eit/steady.hpp"

namespace eit::optics {

std::string_view to_string(AngularConvention c) {
  return c == AngularConvention::PlainMHz ? "plain_mhz" : "two_pi_mhz";
}

AngularConvention parse_angular_convention(std::string_view name) {
  if (name == "plain_mhz") return AngularConvention::PlainMHz;
  if (name == "two_pi_mhz") return AngularConvention::TwoPiMHz;
  throw Error(ErrorKind::InvalidParams,
              fmt::format("optics.angular_convention: unknown value '{}' (expected plain_mhz|two_pi_mhz)", name));
}

double angular_factor(AngularConvention c) {
  return c == AngularConvention::PlainMHz ? 1.0 : 2.0 * std::numbers::pi;
}

void OpticalConstants::validate() const {
  const auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorKind::InvalidParams, fmt::format("optics.{}: must be finite and > 0 (got {})", name, v));
    }
  };
  positive(n0, "n0");
  positive(mu, "mu");
  positive(epsilon0, "epsilon0");
  positive(hbar, "hbar");
  positive(c, "c");
  positive(omega_probe, "omega_probe");
}

OpticalConstants reference_constants(Configuration c, AngularConvention conv) {
  OpticalConstants k;
  k.angular_convention = conv;
  switch (c) {
    case Configuration::Lambda: k.omega_probe = 2.37e9; break;
    case Configuration::Cascade: k.omega_probe = 2.88e9; break;
    case Configuration::Vee: k.omega_probe = 2.42e9; break;
  }
  return k;
}

namespace {

std::pair<int, int> projector_indices(Configuration c) {
  return c == Configuration::Cascade ? std::pair{6, 7} : std::pair{4, 5};
}

}  // namespace

double dispersion_projection(const DensityMatrix& rho, Configuration c) {
  return su3::expectation(rho.matrix(), su3::gell_mann(projector_indices(c).first)).real();
}

double absorption_projection(const DensityMatrix& rho, Configuration c) {
  return su3::expectation(rho.matrix(), su3::gell_mann(projector_indices(c).second)).real();
}

Complex probe_coherence(const DensityMatrix& rho, Configuration c) {
  const auto [lower, upper] = probe_transition(c);
  return rho(lower, upper);
}

double refractive_index(const DensityMatrix& rho, const OpticalConstants& k, Configuration c) {
  return 1.0 + k.prefactor() * dispersion_projection(rho, c);
}

double absorption(const DensityMatrix& rho, const OpticalConstants& k, Configuration c) {
  return k.prefactor() * absorption_projection(rho, c);
}

double group_index_from_slope(const OpticalConstants& k, double slope_per_mhz) {
  return 1.0 + k.prefactor() * k.omega_probe * angular_factor(k.angular_convention) * slope_per_mhz;
}

std::string_view to_string(Backend b) { return b == Backend::Numeric ? "numeric" : "analytic"; }

DensityMatrix solve_steady_state(const SystemParams& p, Backend backend) {
  if (backend == Backend::Analytic) return analytic::analytic_steady_state(p);
  return steady_state(build_liouvillian(p));
}

bool Sweep::ok() const {
  for (const auto& r : rows)
    if (std::holds_alternative<PointFailure>(r)) return false;
  return true;
}

std::vector<PointFailure> Sweep::failures() const {
  std::vector<PointFailure> out;
  for (const auto& r : rows)
    if (const auto* f = std::get_if<PointFailure>(&r)) out.push_back(*f);
  return out;
}

std::vector<SpectralPoint> Sweep::points() const {
  std::vector<SpectralPoint> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    if (const auto* f = std::get_if<PointFailure>(&r)) {
      throw Error(f->kind, fmt::format("at delta = {} MHz: {}", f->delta, f->message));
    }
    out.push_back(std::get<SpectralPoint>(r));
  }
  return out;
}

std::vector<double> uniform_grid(double lo, double hi, int points) {
  if (points < 3) throw Error(ErrorKind::InvalidParams, fmt::format("sweep.points: must be >= 3 (got {})", points));
  if (!(lo < hi)) throw Error(ErrorKind::InvalidParams, "sweep.min: must be < sweep.max");
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double h = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) grid[i] = lo + h * i;
  grid.back() = hi;
  return grid;
}

double group_velocity(const std::vector<SpectralPoint>& sweep, const OpticalConstants& k, double at) {
  const int n = static_cast<int>(sweep.size());
  if (n < 5) throw Error(ErrorKind::GridTooCoarse, "need at least 5 sweep points for the Richardson check");
  const double h = (sweep.back().delta - sweep.front().delta) / (n - 1);
  const double pos = (at - sweep.front().delta) / h;
  const int i = static_cast<int>(std::lround(pos));
  if (std::abs(pos - i) > 1e-6 || i < 2 || i > n - 3) {
    throw std::invalid_argument(fmt::format("group_velocity: {} MHz is not an interior grid point", at));
  }
  const auto f = [&](int j) { return sweep[j].dispersion; };
  const double slope_h = (f(i + 1) - f(i - 1)) / (2.0 * h);
  const double slope_2h = (f(i + 2) - f(i - 2)) / (4.0 * h);
  const double v_fine = k.c / group_index_from_slope(k, slope_h);
  const double v_coarse = k.c / group_index_from_slope(k, slope_2h);
  const double rel = std::abs(v_coarse - v_fine) / std::abs(v_fine);
  if (!(rel <= kRichardsonTol)) {
    throw Error(ErrorKind::GridTooCoarse,
                fmt::format("v_g at {} MHz changes by {:.3e} (relative) between spacing {} and {} MHz", at, rel,
                            2.0 * h, h));
  }
  return v_fine;
}

double reference_group_velocity(Configuration c) {
  switch (c) {
    case Configuration::Lambda: return 17543.7e-9;
    case Configuration::Cascade: return 16316.5e-9;
    case Configuration::Vee: return 16558e-9;
  }
  return 0.0;
}

const CalibrationEntry& CalibrationReport::entry(Configuration c, AngularConvention conv) const {
  for (const auto& e : entries)
    if (e.config == c && e.convention == conv) return e;
  throw std::out_of_range("calibration entry missing");
}

CalibrationReport calibrate() {
  constexpr std::array configs = {Configuration::Lambda, Configuration::Cascade, Configuration::Vee};
  constexpr std::array conventions = {AngularConvention::PlainMHz, AngularConvention::TwoPiMHz};
  CalibrationReport report;
  for (const auto c : configs) {
    const SystemParams p = reference_params(c);
    const OpticalConstants base = reference_constants(c);
    const auto numeric = sweep_serial(p, base, {-30.0, 30.0, 201, Backend::Numeric}).points();
    const auto closed = sweep_serial(p, base, {-30.0, 30.0, 201, Backend::Analytic}).points();
    for (const auto conv : conventions) {
      OpticalConstants k = base;
      k.angular_convention = conv;
      CalibrationEntry e{c, conv};
      e.v_g = group_velocity(numeric, k, 0.0);
      e.v_g_analytic = group_velocity(closed, k, 0.0);
      e.target = reference_group_velocity(c);
      e.relative_error = (e.v_g - e.target) / e.target;
      report.entries.push_back(e);
    }
  }
  const double plain = std::abs(report.entry(Configuration::Lambda, AngularConvention::PlainMHz).relative_error);
  const double two_pi = std::abs(report.entry(Configuration::Lambda, AngularConvention::TwoPiMHz).relative_error);
  report.chosen = plain <= two_pi ? AngularConvention::PlainMHz : AngularConvention::TwoPiMHz;
  report.lambda_within_tolerance = std::min(plain, two_pi) <= 0.10;
  return report;
}

}  // namespace eit::optics
