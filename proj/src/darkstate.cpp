#include "eit/darkstate.hpp"

#include <cmath>
#include <numbers>
#include <optional>

#include <fmt/core.h>

#include "eit/errors.hpp"

namespace eit::darkstate {

StateVector3::StateVector3(const Eigen::Vector3cd& amplitudes) : a_(amplitudes) {
  if (std::abs(a_.norm() - 1.0) > 1e-12) {
    throw Error(ErrorKind::InvalidState, fmt::format("state vector norm {:.15g} != 1", a_.norm()));
  }
}

std::vector<PopulationSample> population_sweep(const SystemParams& p, double delta_min, double delta_max,
                                               int points, optics::Backend backend) {
  p.validate();
  const auto grid = optics::uniform_grid(delta_min, delta_max, points);
  std::vector<PopulationSample> out(grid.size());
  std::vector<std::optional<Error>> failures(grid.size());
  const long n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    try {
      const DensityMatrix rho = optics::solve_steady_state(p.with_probe_detuning(grid[i]), backend);
      out[i] = {grid[i], {rho.population(1), rho.population(2), rho.population(3)}};
    } catch (const Error& e) {
      failures[i] = e;
    }
  }
  for (long i = 0; i < n; ++i) {
    if (failures[i]) {
      throw Error(failures[i]->kind(), fmt::format("at delta = {} MHz: {}", grid[i], failures[i]->what()));
    }
  }
  return out;
}

std::array<int, 2> dark_pair(Configuration c) {
  switch (c) {
    case Configuration::Lambda: return {1, 2};
    case Configuration::Cascade: return {1, 3};
    case Configuration::Vee: return {2, 3};
  }
  throw std::logic_error("unknown configuration");
}

StateVector3 dark_state_vector(double theta, Configuration c) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 2)) {
    throw Error(ErrorKind::InvalidParams, fmt::format("theta: {} outside [0, pi/2]", theta));
  }
  const auto [p, q] = dark_pair(c);
  Eigen::Vector3cd a = Eigen::Vector3cd::Zero();
  a(slot(p)) = std::cos(theta);
  a(slot(q)) = -std::sin(theta);
  return StateVector3(a);
}

MixingAngleReport estimate_mixing_angle(const Populations& pops, Configuration c) {
  const auto [p, q] = dark_pair(c);
  const double pp = std::max(pops.of(p), 0.0);
  const double qq = std::max(pops.of(q), 0.0);
  if (pp + qq < 1e-6) {
    throw Error(ErrorKind::UndefinedAngle,
                fmt::format("dark-pair populations rho{0}{0} + rho{1}{1} = {2:.3e} too small", p, q, pp + qq));
  }
  const double theta = std::atan2(std::sqrt(qq), std::sqrt(pp));
  return {theta, pops, c, dark_state_vector(theta, c)};
}

double verify_dark_state(const SystemParams& p) {
  if (p.config != Configuration::Lambda) {
    throw Error(ErrorKind::UnsupportedConfiguration,
                fmt::format("no single-photon dark state in the kernel of H_int for {}", to_string(p.config)));
  }
  if (p.delta_probe != 0.0 || p.delta_pump != 0.0) {
    throw Error(ErrorKind::InvalidParams, "delta_probe, delta_pump: must both be 0 for the dark-state check");
  }
  const ComplexMatrix3 h_int = build_interaction_hamiltonian(p);
  const double theta = std::atan2(p.g_probe, p.g_pump);
  const StateVector3 dark = dark_state_vector(theta, p.config);
  return (h_int * dark.amplitudes()).norm();
}

}  // namespace eit::darkstate
