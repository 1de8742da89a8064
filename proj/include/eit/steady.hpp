#pragma once

#include <vector>

#include "eit/density_matrix.hpp"
#include "eit/model.hpp"

namespace eit {

/// Singular values at or below this fraction of the largest count as null.
inline constexpr double kNullSpaceTol = 1e-10;
/// Condition-number estimate above which the bordered solve is rejected.
inline constexpr double kMaxCondition = 1e14;

/// Number of singular values of L that are <= tol * sigma_max. A zero
/// superoperator has a nine-dimensional null space.
int null_space_dimension(const Liouvillian& l, double tol = kNullSpaceTol);

/// Unique unit-trace stationary state. The last population-derivative row
/// (the rho11 row) is replaced by the trace functional and the bordered
/// system is solved by LU.
///
/// Throws Error(DegenerateNullSpace) when the stationary manifold is more
/// than one-dimensional, Error(SingularSolve) when the bordered system is
/// ill-conditioned for any other reason.
DensityMatrix steady_state(const Liouvillian& l);

/// max |L vec(rho)|.
double steady_residual(const Liouvillian& l, const ComplexMatrix3& rho);

struct Trajectory {
  std::vector<double> times;  // microseconds
  std::vector<DensityMatrix> states;
};

/// Largest step allowed for the fixed-step integrator: 0.1 / max|L_ij|.
double max_stable_step(const Liouvillian& l);

/// Classical RK4 from rho0 to t_end (us) with a uniform step <= dt_max.
/// Records `samples` evenly spaced states (always including t = 0 and
/// t_end). Throws Error(StepTooLarge) if dt_max exceeds max_stable_step.
Trajectory evolve(const Liouvillian& l, const DensityMatrix& rho0, double t_end, double dt_max,
                  int samples = 1001);

}  // namespace eit
