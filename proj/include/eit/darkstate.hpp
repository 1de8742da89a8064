#pragma once

#include <array>
#include <vector>

#include "eit/model.hpp"
#include "eit/optics.hpp"

namespace eit::darkstate {

/// Amplitudes over the (|3>, |2>, |1>) basis, unit norm.
class StateVector3 {
 public:
  explicit StateVector3(const Eigen::Vector3cd& amplitudes);

  const Eigen::Vector3cd& amplitudes() const noexcept { return a_; }
  /// <level|psi>.
  Complex amplitude(int level) const { return a_(slot(level)); }

 private:
  Eigen::Vector3cd a_;
};

struct Populations {
  double rho11 = 0.0;
  double rho22 = 0.0;
  double rho33 = 0.0;

  double of(int level) const { return level == 1 ? rho11 : level == 2 ? rho22 : rho33; }
};

struct PopulationSample {
  double delta;
  Populations populations;
};

/// Steady-state populations over a uniform probe-detuning grid. The first
/// failing point is rethrown with its detuning in the message.
std::vector<PopulationSample> population_sweep(const SystemParams& p, double delta_min, double delta_max,
                                               int points, optics::Backend backend);

/// Bare states (p, q) whose superposition cos|p> - sin|q> forms the dark
/// state: lambda (1,2), cascade (1,3), vee (2,3).
std::array<int, 2> dark_pair(Configuration c);

struct MixingAngleReport {
  double theta = 0.0;  // radians, in [0, pi/2]
  Populations populations;
  Configuration config;
  StateVector3 dark_state;
};

/// theta = atan2(sqrt(rho_qq), sqrt(rho_pp)) over the configuration's dark
/// pair. Throws Error(UndefinedAngle) if rho_pp + rho_qq < 1e-6.
MixingAngleReport estimate_mixing_angle(const Populations& pops, Configuration c);

/// cos(theta)|p> - sin(theta)|q>. Throws Error(InvalidParams) for theta
/// outside [0, pi/2].
StateVector3 dark_state_vector(double theta, Configuration c);

/// Lambda at two-photon resonance only: || H_int |dark(atan(g_probe/g_pump))> ||.
/// Throws Error(UnsupportedConfiguration) for cascade and vee, and
/// Error(InvalidParams) if either detuning is nonzero.
double verify_dark_state(const SystemParams& p);

}  // namespace eit::darkstate
