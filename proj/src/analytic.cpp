#include "eit/analytic.hpp"

#include <cmath>

#include <fmt/core.h>

#include "eit/errors.hpp"

namespace eit::analytic {
namespace {

constexpr Complex I{0.0, 1.0};

inline double sq(double x) { return x * x; }

// Lambda: g13 probe, g23 pump, D = Delta13.
AnalyticSteadyState lambda_terms(double g13, double g23, double G31, double G32, double D) {
  const double G = G31 + G32;
  const double g13_2 = sq(g13), g23_2 = sq(g23), D2 = sq(D);
  AnalyticSteadyState s;
  s.denominator = G32 * std::pow(g13, 6) + g23_2 * (G31 + 2.0 * G32) * sq(g13_2) +
                  ((2.0 * G31 + G32) * sq(g23_2) + G * (2.0 * g23_2 + G32 * G) * D2) * g13_2 +
                  g23_2 * G31 * (sq(g23_2) - 2.0 * D2 * g23_2 + sq(D2) + sq(G) * D2);

  s.numerators[0] = g23_2 * (G31 * sq(D2) + G31 * (g13_2 - 2.0 * g23_2 + sq(G)) * D2 +
                             (g13_2 + g23_2) * (G32 * g13_2 + g23_2 * G31));
  s.numerators[1] = g13_2 * (G32 * sq(g13_2) + g23_2 * G * g13_2 + G32 * sq(G) * D2 + g23_2 * G32 * D2 +
                             sq(g23_2) * G31);
  s.numerators[2] = g13_2 * g23_2 * G * D2;
  s.numerators[3] = -g13 * g23 *
                    (G32 * sq(g13_2) + G * (g23_2 + I * G32 * D) * g13_2 +
                     g23_2 * G31 * (g23_2 + I * (G + I * D) * D));
  s.numerators[4] = g13 * g23_2 * D * (G32 * g13_2 + g23_2 * G31 + I * G31 * (G + I * D) * D);
  s.numerators[5] = -g13_2 * g23 * D * (G31 * g23_2 + G32 * (g13_2 - I * G * D));
  return s;
}

// Cascade: g12 probe, g23 pump, D = Delta12.
AnalyticSteadyState cascade_terms(double g12, double g23, double G21, double G32, double D) {
  const double g12_2 = sq(g12), g23_2 = sq(g23), D2 = sq(D);
  const double S = G21 + G32;
  // Factors shared by several numerators.
  const double pump_dressing = g23_2 + G32 * S;
  const double quartic = sq(g23_2) + 2.0 * (G21 * G32 - D2) * g23_2 + (sq(G21) + D2) * (sq(G32) + D2);

  AnalyticSteadyState s;
  s.denominator =
      2.0 * G21 * G32 * std::pow(g12, 6) +
      ((sq(G21) + 4.0 * G32 * G21 + 2.0 * sq(G32)) * g23_2 + G21 * G32 * (sq(G21 + 2.0 * G32) + D2)) * sq(g12_2) +
      ((2.0 * sq(G21) + 3.0 * G32 * G21 + 2.0 * sq(G32)) * sq(g23_2) +
       ((2.0 * sq(G21) + 4.0 * G32 * G21 + sq(G32)) * D2 +
        G32 * (4.0 * std::pow(G21, 3) + 7.0 * G32 * sq(G21) + 6.0 * sq(G32) * G21 + 2.0 * std::pow(G32, 3))) *
           g23_2 +
       2.0 * G21 * G32 * S * ((G21 + 2.0 * G32) * D2 + G32 * (sq(G21) + G32 * G21 + sq(G32)))) *
          g12_2 +
      G21 * S * pump_dressing * quartic;

  s.numerators[0] =
      G21 * G32 * std::pow(g12, 6) +
      G32 * (S * g23_2 + G21 * (sq(G21) + 2.0 * G32 * G21 + 2.0 * sq(G32) + D2)) * sq(g12_2) +
      (sq(G21) * sq(g23_2) +
       ((sq(G21) + 3.0 * G32 * G21 + sq(G32)) * D2 +
        G32 * (3.0 * std::pow(G21, 3) + 3.0 * G32 * sq(G21) + 2.0 * sq(G32) * G21 + std::pow(G32, 3))) *
           g23_2 +
       G21 * G32 * S * ((G21 + 3.0 * G32) * D2 + G32 * (2.0 * sq(G21) + G32 * G21 + sq(G32)))) *
          g12_2 +
      G21 * S * pump_dressing * quartic;
  s.numerators[1] = g12_2 * (G21 * G32 * sq(g12_2) + G32 * ((2.0 * G21 + G32) * g23_2 + 2.0 * G21 * G32 * S) * g12_2 +
                             S * pump_dressing * (G32 * g23_2 + G21 * (sq(G32) + D2)));
  s.numerators[2] = g12_2 * g23_2 * S * (G21 * g12_2 + S * (g23_2 + G21 * G32));
  s.numerators[3] =
      I * g12 *
      (G21 * G32 * (G21 + I * D) * sq(g12_2) +
       G32 * ((2.0 * G21 + G32) * g23_2 + 2.0 * G21 * G32 * S) * (G21 + I * D) * g12_2 +
       G21 * S * pump_dressing * (g23_2 + (G21 + I * D) * (G32 + I * D)) * (G32 - I * D));
  s.numerators[4] =
      g12 * g23 *
      (G21 * G32 * sq(g12_2) +
       (-G32 * std::pow(G21, 3) + std::pow(G32, 3) * G21 + g23_2 * (-sq(G21) + G32 * G21 + sq(G32))) * g12_2 -
       G21 * S * pump_dressing * (g23_2 + (G21 + I * D) * (G32 + I * D)));
  s.numerators[5] = I * g12_2 * g23 * S *
                    (G21 * G32 * g12_2 + G32 * S * (g23_2 + G21 * G32) + I * G21 * pump_dressing * D);
  return s;
}

// Vee: g13 probe, g12 pump, D = Delta13.
AnalyticSteadyState vee_terms(double g13, double g12, double G21, double G31, double D) {
  const double g12_2 = sq(g12), g13_2 = sq(g13), D2 = sq(D);
  const double S = G21 + G31;
  const double Q = sq(G21) + G31 * G21 + sq(G31);
  const double pump_arm = g13_2 + G21 * S;
  const double pump_arm_sq = sq(pump_arm) + sq(G21) * D2;

  AnalyticSteadyState s;
  s.denominator = 2.0 * G21 * G31 * std::pow(g12, 6) +
                  (2.0 * Q * g13_2 + G21 * G31 * (sq(G21 + 2.0 * G31) - 4.0 * D2)) * sq(g12_2) +
                  (2.0 * G21 * G31 * sq(D2) +
                   ((sq(G21) + 6.0 * G31 * G21 + 2.0 * sq(G31)) * g13_2 + 4.0 * G21 * sq(G31) * S) * D2 +
                   2.0 * (g13_2 + sq(G31)) * Q * pump_arm) *
                      g12_2 +
                  G21 * G31 * (2.0 * g13_2 + sq(G31) + D2) * pump_arm_sq;

  s.numerators[0] =
      G21 * G31 * std::pow(g12, 6) +
      (Q * g13_2 + G21 * G31 * (sq(G21) + 2.0 * G31 * G21 + 2.0 * sq(G31) - 2.0 * D2)) * sq(g12_2) +
      (Q * sq(g13_2) +
       (std::pow(G21, 4) + 2.0 * G31 * std::pow(G21, 3) + 4.0 * sq(G31) * sq(G21) + 2.0 * std::pow(G31, 3) * G21 +
        std::pow(G31, 4) + G31 * (2.0 * G21 + G31) * D2) *
           g13_2 +
       G21 * G31 *
           (2.0 * G31 * std::pow(G21, 3) + (3.0 * sq(G31) - D2) * sq(G21) + 2.0 * G31 * (sq(G31) + D2) * G21 +
            sq(sq(G31) + D2))) *
          g12_2 +
      G21 * G31 * (g13_2 + sq(G31) + D2) * pump_arm_sq;
  s.numerators[1] =
      g12_2 * (G21 * G31 * sq(g12_2) + ((sq(G21) + sq(G31)) * g13_2 + 2.0 * G21 * G31 * (G31 * S - D2)) * g12_2 +
               G31 * (G21 * sq(g13_2) +
                      (std::pow(G21, 3) + G31 * sq(G21) + sq(G31) * G21 + std::pow(G31, 3) + (3.0 * G21 + G31) * D2) *
                          g13_2 +
                      G21 * (sq(G31) + D2) * (sq(S) + D2)));
  s.numerators[2] =
      g13_2 * (G21 * G31 * sq(g12_2) + ((sq(G21) + sq(G31)) * g13_2 + G21 * S * (sq(G21) + sq(G31) + D2)) * g12_2 +
               G21 * G31 * pump_arm_sq);
  s.numerators[3] =
      I * g12 *
      (sq(G21) * G31 * sq(g12_2) +
       ((std::pow(G21, 3) + sq(G31) * G21 + 2.0 * I * sq(G31) * D) * g13_2 + 2.0 * sq(G21) * G31 * (G31 * S - D2)) *
           g12_2 +
       G21 * G31 * (g13_2 + G21 * (S - I * D)) * ((G21 + 2.0 * I * D) * g13_2 + (S + I * D) * (sq(G31) + D2)));
  s.numerators[4] =
      I * g13 *
      (G21 * G31 * (G31 - I * D) * sq(g12_2) +
       (I * G21 * G31 * D2 * D + G21 * G31 * S * D2 + I * (g13_2 + G21 * G31) * (sq(G31) - sq(G21)) * D +
        G31 * (sq(G21) + sq(G31)) * pump_arm) *
           g12_2 +
       G21 * G31 * (G31 + I * D) * pump_arm_sq);
  s.numerators[5] =
      g12 * g13 *
      (G21 * G31 * sq(g12_2) +
       ((sq(G21) + sq(G31)) * g13_2 + G21 * G31 * (sq(G21) + 2.0 * G31 * G21 + (G31 + I * D) * (G31 + I * D))) *
           g12_2 +
       G21 * G31 * (g13_2 + G21 * (S + I * D)) * (g13_2 + D2 + G31 * S + I * G21 * D));
  return s;
}

std::size_t index_of(Element e) { return static_cast<std::size_t>(e); }

}  // namespace

AnalyticSteadyState evaluate_polynomials(const SystemParams& p) {
  if (p.delta_pump != 0.0) {
    throw Error(ErrorKind::PumpDetuningUnsupported,
                fmt::format("closed forms require delta_pump = 0 (got {})", p.delta_pump));
  }
  switch (p.config) {
    case Configuration::Lambda: return lambda_terms(p.g_probe, p.g_pump, p.gamma_a, p.gamma_b, p.delta_probe);
    case Configuration::Cascade: return cascade_terms(p.g_probe, p.g_pump, p.gamma_a, p.gamma_b, p.delta_probe);
    case Configuration::Vee: return vee_terms(p.g_probe, p.g_pump, p.gamma_a, p.gamma_b, p.delta_probe);
  }
  throw std::logic_error("unknown configuration");
}

AnalyticSteadyState analytic_numerators(const SystemParams& p) {
  AnalyticSteadyState s = evaluate_polynomials(p);
  if (!(std::abs(s.denominator) >= kMinDenominator)) {
    throw Error(ErrorKind::DegenerateDenominator,
                fmt::format("closed-form denominator {:.3e} below {:.0e}", s.denominator, kMinDenominator));
  }
  return s;
}

Complex analytic_element(const SystemParams& p, Element e) {
  const AnalyticSteadyState s = analytic_numerators(p);
  return s.numerator(e) / s.denominator;
}

DensityMatrix analytic_steady_state(const SystemParams& p) {
  const AnalyticSteadyState s = analytic_numerators(p);
  const auto value = [&](Element e) { return s.numerators[index_of(e)] / s.denominator; };
  ComplexMatrix3 m;
  element(m, 1, 1) = value(Element::E11).real();
  element(m, 2, 2) = value(Element::E22).real();
  element(m, 3, 3) = value(Element::E33).real();
  const Complex r12 = value(Element::E12), r13 = value(Element::E13), r23 = value(Element::E23);
  element(m, 1, 2) = r12;
  element(m, 2, 1) = std::conj(r12);
  element(m, 1, 3) = r13;
  element(m, 3, 1) = std::conj(r13);
  element(m, 2, 3) = r23;
  element(m, 3, 2) = std::conj(r23);
  return DensityMatrix(m);
}

}  // namespace eit::analytic
