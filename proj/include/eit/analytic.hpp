#pragma once

#include <array>

#include "eit/density_matrix.hpp"
#include "eit/model.hpp"

namespace eit::analytic {

/// Below this the closed-form denominator is treated as vanished.
inline constexpr double kMinDenominator = 1e-30;

enum class Element { E11, E22, E33, E12, E13, E23 };

inline constexpr std::array<Element, 6> kAllElements = {Element::E11, Element::E22, Element::E33,
                                                        Element::E12, Element::E13, Element::E23};

/// Closed-form steady state at zero pump detuning: rho_ij = numerator_ij / denominator,
/// with rho_ij = <i|rho|j>.
struct AnalyticSteadyState {
  double denominator = 0.0;
  std::array<Complex, 6> numerators{};  // ordered as kAllElements

  Complex numerator(Element e) const { return numerators[static_cast<std::size_t>(e)]; }
};

/// Raw polynomials, no guards beyond the pump-detuning precondition.
/// Throws Error(PumpDetuningUnsupported) if delta_pump != 0.
AnalyticSteadyState evaluate_polynomials(const SystemParams& p);

/// Throws Error(PumpDetuningUnsupported) or Error(DegenerateDenominator).
AnalyticSteadyState analytic_numerators(const SystemParams& p);

Complex analytic_element(const SystemParams& p, Element e);

DensityMatrix analytic_steady_state(const SystemParams& p);

}  // namespace eit::analytic
