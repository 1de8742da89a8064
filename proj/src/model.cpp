#include "eit/model.hpp"

#include <cmath>
#include <string>

#include <fmt/core.h>

#include "eit/errors.hpp"

namespace eit {

std::string_view to_string(Configuration c) {
  switch (c) {
    case Configuration::Lambda: return "lambda";
    case Configuration::Cascade: return "cascade";
    case Configuration::Vee: return "vee";
  }
  return "unknown";
}

Configuration parse_configuration(std::string_view name) {
  if (name == "lambda") return Configuration::Lambda;
  if (name == "cascade") return Configuration::Cascade;
  if (name == "vee") return Configuration::Vee;
  throw Error(ErrorKind::InvalidParams,
              fmt::format("config: unknown configuration '{}' (expected lambda|cascade|vee)", name));
}

ProbeTransition probe_transition(Configuration c) {
  switch (c) {
    case Configuration::Lambda: return {1, 3};
    case Configuration::Cascade: return {1, 2};
    case Configuration::Vee: return {1, 3};
  }
  throw std::logic_error("unknown configuration");
}

void SystemParams::validate() const {
  const auto check = [](double v, const char* name) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidParams, fmt::format("{}: must be finite", name));
  };
  check(g_probe, "g_probe");
  check(g_pump, "g_pump");
  check(gamma_a, "gamma_a");
  check(gamma_b, "gamma_b");
  check(delta_probe, "delta_probe");
  check(delta_pump, "delta_pump");
  const auto non_negative = [](double v, const char* name) {
    if (v < 0.0) throw Error(ErrorKind::InvalidParams, fmt::format("{}: must be >= 0 (got {})", name, v));
  };
  non_negative(g_probe, "g_probe");
  non_negative(g_pump, "g_pump");
  non_negative(gamma_a, "gamma_a");
  non_negative(gamma_b, "gamma_b");
  if (gamma_a == 0.0 && gamma_b == 0.0) {
    throw Error(ErrorKind::InvalidParams, "gamma_a, gamma_b: at least one decay constant must be > 0");
  }
}

SystemParams reference_params(Configuration c) {
  switch (c) {
    case Configuration::Lambda: return {c, 0.5, 105.0, 0.1, 6.0, 0.0, 0.0};
    case Configuration::Cascade: return {c, 0.8, 92.0, 0.49, 3.49, 0.0, 0.0};
    case Configuration::Vee: return {c, 10.0, 250.0, 9.0, 6.0, 0.0, 0.0};
  }
  throw std::logic_error("unknown configuration");
}

std::vector<DecayChannel> decay_channels(const SystemParams& p) {
  using su3::Family;
  switch (p.config) {
    case Configuration::Lambda:
      return {{p.gamma_a, Family::V, 3, 1}, {p.gamma_b, Family::T, 3, 2}};
    case Configuration::Cascade:
      return {{p.gamma_a, Family::U, 2, 1}, {p.gamma_b, Family::T, 3, 2}};
    case Configuration::Vee:
      return {{p.gamma_a, Family::U, 2, 1}, {p.gamma_b, Family::V, 3, 1}};
  }
  throw std::logic_error("unknown configuration");
}

StateVector9 vectorize(const ComplexMatrix3& m) {
  StateVector9 v;
  for (int col = 0; col < 3; ++col)
    for (int row = 0; row < 3; ++row) v(vec_index(row, col)) = m(row, col);
  return v;
}

ComplexMatrix3 unvectorize(const StateVector9& v) {
  ComplexMatrix3 m;
  for (int col = 0; col < 3; ++col)
    for (int row = 0; row < 3; ++row) m(row, col) = v(vec_index(row, col));
  return m;
}

Eigen::Matrix<Complex, 1, 9> Liouvillian::trace_readout() const {
  Eigen::Matrix<Complex, 1, 9> r = Eigen::Matrix<Complex, 1, 9>::Zero();
  for (int d = 0; d < 3; ++d) r += matrix.row(vec_index(d, d));
  return r;
}

ComplexMatrix3 build_interaction_hamiltonian(const SystemParams& p) {
  using su3::Family;
  const auto coupling = [](Family f, double g) -> ComplexMatrix3 {
    return g * (su3::raising(f) + su3::lowering(f));
  };
  switch (p.config) {
    case Configuration::Lambda: return coupling(Family::V, p.g_probe) + coupling(Family::T, p.g_pump);
    case Configuration::Cascade: return coupling(Family::U, p.g_probe) + coupling(Family::T, p.g_pump);
    case Configuration::Vee: return coupling(Family::V, p.g_probe) + coupling(Family::U, p.g_pump);
  }
  throw std::logic_error("unknown configuration");
}

ComplexMatrix3 build_hamiltonian_rwa(const SystemParams& p) {
  using su3::Family;
  // X+X- projects on the upper level of X, X-X+ on the lower one. Level 1 is
  // the energy reference in every frame.
  const ComplexMatrix3 on3 = su3::raising(Family::V) * su3::lowering(Family::V);
  const ComplexMatrix3 on2 = su3::raising(Family::U) * su3::lowering(Family::U);
  ComplexMatrix3 h = build_interaction_hamiltonian(p);
  switch (p.config) {
    case Configuration::Lambda:
      h += p.delta_probe * on3 + (p.delta_probe - p.delta_pump) * on2;
      break;
    case Configuration::Cascade:
      h += p.delta_probe * on2 + (p.delta_probe + p.delta_pump) * on3;
      break;
    case Configuration::Vee:
      h += p.delta_pump * on2 + p.delta_probe * on3;
      break;
  }
  return h;
}

namespace {

template <typename Map>
Liouvillian superoperator_of(Map&& map) {
  Liouvillian l;
  for (int col = 0; col < 3; ++col) {
    for (int row = 0; row < 3; ++row) {
      ComplexMatrix3 basis = ComplexMatrix3::Zero();
      basis(row, col) = 1.0;
      l.matrix.col(vec_index(row, col)) = vectorize(map(basis));
    }
  }
  return l;
}

}  // namespace

Liouvillian build_dissipator(const SystemParams& p) {
  const auto channels = decay_channels(p);
  return superoperator_of([&](const ComplexMatrix3& rho) {
    ComplexMatrix3 out = ComplexMatrix3::Zero();
    for (const auto& ch : channels) {
      if (ch.rate == 0.0) continue;
      const ComplexMatrix3 a = su3::lowering(ch.family);
      const ComplexMatrix3 ada = a.adjoint() * a;
      out += ch.rate * (2.0 * a * rho * a.adjoint() - ada * rho - rho * ada);
    }
    return out;
  });
}

Liouvillian build_liouvillian(const SystemParams& p) {
  const ComplexMatrix3 h = build_hamiltonian_rwa(p);
  const Complex i{0.0, 1.0};
  const Liouvillian coherent =
      superoperator_of([&](const ComplexMatrix3& rho) -> ComplexMatrix3 { return i * su3::commutator(rho, h); });
  return coherent + build_dissipator(p);
}

ComplexMatrix3 obe_rhs(const SystemParams& p, const ComplexMatrix3& rho) {
  const Complex i{0.0, 1.0};
  const auto r = [&](int a, int b) { return element(rho, a, b); };
  Complex d11, d22, d33, d12, d13, d23;

  switch (p.config) {
    case Configuration::Lambda: {
      const double g13 = p.g_probe, g23 = p.g_pump;
      const double G31 = p.gamma_a, G32 = p.gamma_b;
      const double D13 = p.delta_probe, D23 = p.delta_pump;
      d11 = i * g13 * (r(1, 3) - r(3, 1)) + 2.0 * G31 * r(3, 3);
      d22 = i * g23 * (r(2, 3) - r(3, 2)) + 2.0 * G32 * r(3, 3);
      d33 = -i * g13 * (r(1, 3) - r(3, 1)) - i * g23 * (r(2, 3) - r(3, 2)) - 2.0 * (G31 + G32) * r(3, 3);
      d12 = i * (D13 * r(1, 2) - D23 * r(1, 2) + g23 * r(1, 3) - g13 * r(3, 2));
      d13 = i * (g23 * r(1, 2) + (i * (G31 + G32) + D13) * r(1, 3) + g13 * (r(1, 1) - r(3, 3)));
      d23 = i * (g13 * r(2, 1) + D23 * r(2, 3) + g23 * (r(2, 2) - r(3, 3))) - (G31 + G32) * r(2, 3);
      break;
    }
    case Configuration::Cascade: {
      const double g12 = p.g_probe, g23 = p.g_pump;
      const double G21 = p.gamma_a, G32 = p.gamma_b;
      const double D12 = p.delta_probe, D23 = p.delta_pump;
      d11 = i * g12 * (r(1, 2) - r(2, 1)) + 2.0 * G21 * r(2, 2);
      d22 = -i * (g12 * (r(1, 2) - r(2, 1)) + g23 * (r(3, 2) - r(2, 3))) + 2.0 * G32 * r(3, 3) -
            2.0 * G21 * r(2, 2);
      d33 = i * (g23 * r(3, 2) - g23 * r(2, 3)) - 2.0 * G32 * r(3, 3);
      d12 = i * (D12 * r(1, 2) + g12 * (r(1, 1) - r(2, 2)) + g23 * r(1, 3)) - G21 * r(1, 2);
      d13 = i * (g23 * r(1, 2) + (D12 + D23) * r(1, 3) - g12 * r(2, 3)) - G32 * r(1, 3);
      d23 = i * (-g12 * r(1, 3) + g23 * r(2, 2) + D23 * r(2, 3) - g23 * r(3, 3)) - (G21 + G32) * r(2, 3);
      break;
    }
    case Configuration::Vee: {
      const double g13 = p.g_probe, g12 = p.g_pump;
      const double G21 = p.gamma_a, G31 = p.gamma_b;
      const double D13 = p.delta_probe, D12 = p.delta_pump;
      d11 = 2.0 * G21 * r(2, 2) + i * (g12 * (r(1, 2) - r(2, 1)) + g13 * (r(1, 3) - r(3, 1))) +
            2.0 * G31 * r(3, 3);
      d22 = -i * g12 * (r(1, 2) - r(2, 1)) - 2.0 * G21 * r(2, 2);
      d33 = -i * g13 * (r(1, 3) - r(3, 1)) - 2.0 * G31 * r(3, 3);
      d12 = i * (g12 * r(1, 1) + D12 * r(1, 2) - g12 * r(2, 2) - g13 * r(3, 2)) - G21 * r(1, 2);
      d13 = i * (g13 * r(1, 1) + D13 * r(1, 3) - g12 * r(2, 3) - g13 * r(3, 3)) - G31 * r(1, 3);
      d23 = -G21 * r(2, 3) - G31 * r(2, 3) + i * (-g12 * r(1, 3) + g13 * r(2, 1) - D12 * r(2, 3) + D13 * r(2, 3));
      break;
    }
  }

  ComplexMatrix3 out;
  element(out, 1, 1) = d11;
  element(out, 2, 2) = d22;
  element(out, 3, 3) = d33;
  element(out, 1, 2) = d12;
  element(out, 2, 1) = std::conj(d12);
  element(out, 1, 3) = d13;
  element(out, 3, 1) = std::conj(d13);
  element(out, 2, 3) = d23;
  element(out, 3, 2) = std::conj(d23);
  return out;
}

}  // namespace eit
