// Detuning sweeps. Each grid point is an independent steady-state solve, so
// the parallel kernel is a plain static-schedule loop writing into
// preallocated slots; the serial path runs the same per-point kernel.

#include <cmath>
#include <limits>

#include "eit/optics.hpp"

namespace eit::optics {
namespace {

SweepRow evaluate_point(const SystemParams& base, const OpticalConstants& k, Backend backend, double delta) {
  try {
    const SystemParams p = base.with_probe_detuning(delta);
    const DensityMatrix rho = solve_steady_state(p, backend);
    SpectralPoint pt;
    pt.delta = delta;
    pt.dispersion = dispersion_projection(rho, p.config);
    pt.absorption = absorption_projection(rho, p.config);
    pt.n = 1.0 + k.prefactor() * pt.dispersion;
    pt.alpha = k.prefactor() * pt.absorption;
    pt.rho11 = rho.population(1);
    pt.rho22 = rho.population(2);
    pt.rho33 = rho.population(3);
    pt.probe_coherence = probe_coherence(rho, p.config);
    return pt;
  } catch (const Error& e) {
    return PointFailure{delta, e.kind(), e.what()};
  }
}

// Central differences inside, one-sided at the ends; NaN next to failures.
void attach_group_quantities(std::vector<SweepRow>& rows, const OpticalConstants& k, double h) {
  const int n = static_cast<int>(rows.size());
  const auto value = [&](int j) -> double {
    if (j < 0 || j >= n) return std::numeric_limits<double>::quiet_NaN();
    const auto* p = std::get_if<SpectralPoint>(&rows[j]);
    return p ? p->dispersion : std::numeric_limits<double>::quiet_NaN();
  };
  std::vector<double> slopes(n);
  for (int i = 0; i < n; ++i) {
    if (i == 0) {
      slopes[i] = (value(1) - value(0)) / h;
    } else if (i == n - 1) {
      slopes[i] = (value(n - 1) - value(n - 2)) / h;
    } else {
      slopes[i] = (value(i + 1) - value(i - 1)) / (2.0 * h);
    }
  }
  for (int i = 0; i < n; ++i) {
    auto* p = std::get_if<SpectralPoint>(&rows[i]);
    if (!p) continue;
    p->one_sided = (i == 0 || i == n - 1);
    p->dispersion_slope = slopes[i];
    p->n_g = group_index_from_slope(k, slopes[i]);
    p->v_g = k.c / p->n_g;
  }
}

void check_inputs(const SystemParams& p, const OpticalConstants& k) {
  p.validate();
  k.validate();
}

}  // namespace

Sweep sweep_serial(const SystemParams& p, const OpticalConstants& k, const SweepRequest& req) {
  check_inputs(p, k);
  const auto grid = uniform_grid(req.delta_min, req.delta_max, req.points);
  Sweep out;
  out.rows.reserve(grid.size());
  for (const double d : grid) out.rows.push_back(evaluate_point(p, k, req.backend, d));
  attach_group_quantities(out.rows, k, (req.delta_max - req.delta_min) / (req.points - 1));
  return out;
}

Sweep sweep(const SystemParams& p, const OpticalConstants& k, const SweepRequest& req) {
  check_inputs(p, k);
  const auto grid = uniform_grid(req.delta_min, req.delta_max, req.points);
  const long n = static_cast<long>(grid.size());
  Sweep out;
  out.rows.resize(grid.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out.rows[i] = evaluate_point(p, k, req.backend, grid[i]);
  attach_group_quantities(out.rows, k, (req.delta_max - req.delta_min) / (req.points - 1));
  return out;
}

}  // namespace eit::optics
