#include "eit/density_matrix.hpp"

#include <cmath>

#include <fmt/core.h>

#include "eit/errors.hpp"

namespace eit {
namespace {

double min_eig(const ComplexMatrix3& m) {
  // Hermitian part only; the anti-Hermitian residue is checked separately.
  const ComplexMatrix3 h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix3> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace

void check_density_invariants(const ComplexMatrix3& m) {
  if (!m.allFinite()) throw Error(ErrorKind::InvalidState, "density matrix has non-finite entries");
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > DensityMatrix::kHermitianTol) {
    throw Error(ErrorKind::InvalidState, fmt::format("not Hermitian (max |rho - rho^+| = {:.3e})", herm));
  }
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > DensityMatrix::kTraceTol) {
    throw Error(ErrorKind::InvalidState, fmt::format("trace {:.12g} != 1", tr.real()));
  }
  const double lo = min_eig(m);
  if (lo < -DensityMatrix::kPositivityTol) {
    throw Error(ErrorKind::InvalidState, fmt::format("negative eigenvalue {:.3e}", lo));
  }
}

DensityMatrix::DensityMatrix(const ComplexMatrix3& m) : m_(m) { check_density_invariants(m_); }

DensityMatrix DensityMatrix::ground() { return DensityMatrix(ket_bra(1, 1)); }

DensityMatrix DensityMatrix::maximally_mixed() {
  return DensityMatrix(ComplexMatrix3::Identity() / 3.0);
}

double DensityMatrix::min_eigenvalue() const { return min_eig(m_); }

}  // namespace eit
