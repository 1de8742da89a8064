#include "eit/steady.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/core.h>

#include "eit/errors.hpp"

namespace eit {

int null_space_dimension(const Liouvillian& l, double tol) {
  Eigen::JacobiSVD<SuperMatrix> svd(l.matrix);
  const auto& s = svd.singularValues();
  const double smax = s(0);
  if (smax == 0.0) return 9;
  return static_cast<int>(std::count_if(s.begin(), s.end(), [&](double v) { return v <= tol * smax; }));
}

double steady_residual(const Liouvillian& l, const ComplexMatrix3& rho) {
  return (l.matrix * vectorize(rho)).cwiseAbs().maxCoeff();
}

DensityMatrix steady_state(const Liouvillian& l) {
  constexpr int kTraceRow = vec_index(2, 2);  // d rho11 / dt

  SuperMatrix bordered = l.matrix;
  bordered.row(kTraceRow).setZero();
  for (int d = 0; d < 3; ++d) bordered(kTraceRow, vec_index(d, d)) = 1.0;
  StateVector9 rhs = StateVector9::Zero();
  rhs(kTraceRow) = 1.0;

  Eigen::PartialPivLU<SuperMatrix> lu(bordered);
  const double rcond = lu.rcond();
  if (!(rcond * kMaxCondition > 1.0)) {
    const int dim = null_space_dimension(l);
    if (dim > 1) {
      throw Error(ErrorKind::DegenerateNullSpace,
                  fmt::format("stationary manifold has dimension {}; pick an initial state and evolve", dim));
    }
    throw Error(ErrorKind::SingularSolve,
                fmt::format("bordered system condition estimate {:.3e} exceeds {:.0e}",
                            rcond > 0 ? 1.0 / rcond : std::numeric_limits<double>::infinity(), kMaxCondition));
  }
  const StateVector9 x = lu.solve(rhs);
  return DensityMatrix(unvectorize(x));
}

double max_stable_step(const Liouvillian& l) {
  const double scale = l.rate_scale();
  return scale > 0.0 ? 0.1 / scale : std::numeric_limits<double>::infinity();
}

Trajectory evolve(const Liouvillian& l, const DensityMatrix& rho0, double t_end, double dt_max, int samples) {
  if (!(t_end > 0.0)) throw Error(ErrorKind::InvalidParams, "t_end: must be > 0");
  if (!(dt_max > 0.0)) throw Error(ErrorKind::InvalidParams, "dt_max: must be > 0");
  if (samples < 2) throw Error(ErrorKind::InvalidParams, "samples: must be >= 2");
  const double bound = max_stable_step(l);
  if (dt_max > bound) {
    throw Error(ErrorKind::StepTooLarge, fmt::format("dt_max {:.6g} us exceeds stability bound {:.6g} us", dt_max, bound));
  }

  const auto steps = static_cast<long long>(std::ceil(t_end / dt_max - 1e-12));
  const long long n_steps = std::max<long long>(steps, samples - 1);
  const double h = t_end / static_cast<double>(n_steps);
  const SuperMatrix& m = l.matrix;

  Trajectory traj;
  traj.times.reserve(samples);
  traj.states.reserve(samples);
  traj.times.push_back(0.0);
  traj.states.push_back(rho0);

  StateVector9 y = vectorize(rho0.matrix());
  int next_sample = 1;
  for (long long step = 1; step <= n_steps; ++step) {
    const StateVector9 k1 = m * y;
    const StateVector9 k2 = m * (y + 0.5 * h * k1);
    const StateVector9 k3 = m * (y + 0.5 * h * k2);
    const StateVector9 k4 = m * (y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    // Sample k sits at step round(k * n_steps / (samples - 1)).
    const long long target = (static_cast<long long>(next_sample) * n_steps + (samples - 1) / 2) / (samples - 1);
    if (step == target || step == n_steps) {
      traj.times.push_back(step == n_steps ? t_end : static_cast<double>(step) * h);
      traj.states.emplace_back(unvectorize(y));
      ++next_sample;
      if (step == n_steps) break;
    }
  }
  return traj;
}

}  // namespace eit
