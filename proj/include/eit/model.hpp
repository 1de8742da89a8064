#pragma once

#include <string_view>
#include <vector>

#include "eit/density_matrix.hpp"
#include "eit/su3.hpp"

namespace eit {

// Probe/pump assignment:
//   Lambda:  probe 1<->3 (g13), pump 2<->3 (g23), decays 3->1, 3->2
//   Cascade: probe 1<->2 (g12), pump 2<->3 (g23), decays 2->1, 3->2
//   Vee:     probe 1<->3 (g13), pump 1<->2 (g12), decays 2->1, 3->1
enum class Configuration { Lambda, Cascade, Vee };

std::string_view to_string(Configuration c);
/// Accepts "lambda", "cascade", "vee". Throws Error(InvalidParams).
Configuration parse_configuration(std::string_view name);

/// Lower/upper level of the probe transition.
struct ProbeTransition {
  int lower;
  int upper;
};
ProbeTransition probe_transition(Configuration c);

// All frequencies in MHz, hbar = 1.
//
// gamma_a / gamma_b are the two permitted decay constants, in the order
//   Lambda: (G31, G32), Cascade: (G21, G32), Vee: (G21, G31).
struct SystemParams {
  Configuration config = Configuration::Lambda;
  double g_probe = 0.0;
  double g_pump = 0.0;
  double gamma_a = 0.0;
  double gamma_b = 0.0;
  double delta_probe = 0.0;
  double delta_pump = 0.0;

  /// Throws Error(InvalidParams) naming the offending field.
  void validate() const;

  SystemParams with_probe_detuning(double delta) const {
    SystemParams p = *this;
    p.delta_probe = delta;
    return p;
  }
};

/// Parameter sets used for the reference spectra (probe detuning 0).
SystemParams reference_params(Configuration c);

struct DecayChannel {
  double rate;
  su3::Family family;  // the lowering operator X- of this family is the jump operator
  int from;
  int to;
};
std::vector<DecayChannel> decay_channels(const SystemParams& p);

// Column-major vectorisation over the (|3>,|2>,|1>) layout:
// vec index k = 3 * column + row.
inline constexpr int vec_index(int row, int col) noexcept { return 3 * col + row; }

using SuperMatrix = Eigen::Matrix<Complex, 9, 9>;
using StateVector9 = Eigen::Matrix<Complex, 9, 1>;

StateVector9 vectorize(const ComplexMatrix3& m);
ComplexMatrix3 unvectorize(const StateVector9& v);

/// d vec(rho)/dt = matrix * vec(rho), in MHz.
struct Liouvillian {
  SuperMatrix matrix = SuperMatrix::Zero();

  ComplexMatrix3 apply(const ComplexMatrix3& rho) const { return unvectorize(matrix * vectorize(rho)); }

  /// Row vector r with r . vec(rho) = d Tr(rho)/dt.
  Eigen::Matrix<Complex, 1, 9> trace_readout() const;

  /// max |L_ij|, the rate scale used for the integrator stability bound.
  double rate_scale() const { return matrix.cwiseAbs().maxCoeff(); }

  Liouvillian operator+(const Liouvillian& o) const { return Liouvillian{matrix + o.matrix}; }
};

/// Rotating-frame Hamiltonian such that i[rho, H] gives the coherent OBE terms.
ComplexMatrix3 build_hamiltonian_rwa(const SystemParams& p);

/// Only the field-coupling part of build_hamiltonian_rwa.
ComplexMatrix3 build_interaction_hamiltonian(const SystemParams& p);

/// Sum over permitted channels of G (2 A rho A^+ - A^+A rho - rho A^+A).
Liouvillian build_dissipator(const SystemParams& p);

Liouvillian build_liouvillian(const SystemParams& p);

/// Element-by-element optical Bloch equations, written out by hand. Kept as
/// an independent cross-check of build_liouvillian.
ComplexMatrix3 obe_rhs(const SystemParams& p, const ComplexMatrix3& rho);
inline ComplexMatrix3 obe_rhs(const SystemParams& p, const DensityMatrix& rho) {
  return obe_rhs(p, rho.matrix());
}

}  // namespace eit
