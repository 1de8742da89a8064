#pragma once

#include "eit/su3.hpp"

namespace eit {

// Hermitian, unit-trace, positive semidefinite 3x3 state. Construction
// validates; an invalid matrix raises Error(InvalidState).
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kPositivityTol = 1e-9;

  explicit DensityMatrix(const ComplexMatrix3& m);

  /// Pure ground state |1><1|.
  static DensityMatrix ground();
  /// I/3.
  static DensityMatrix maximally_mixed();

  const ComplexMatrix3& matrix() const noexcept { return m_; }

  /// <i|rho|j>.
  Complex operator()(int i, int j) const { return element(m_, i, j); }
  double population(int level) const { return element(m_, level, level).real(); }

  double min_eigenvalue() const;

 private:
  ComplexMatrix3 m_;
};

/// Throws Error(InvalidState) naming the violated invariant.
void check_density_invariants(const ComplexMatrix3& m);

}  // namespace eit
