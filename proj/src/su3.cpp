#include "eit/su3.hpp"

#include <stdexcept>

namespace eit {

ComplexMatrix3 ket_bra(int i, int j) {
  ComplexMatrix3 m = ComplexMatrix3::Zero();
  element(m, i, j) = 1.0;
  return m;
}

namespace su3 {
namespace {

struct Transition {
  int lower;
  int upper;
};

Transition transition_of(Family f) {
  switch (f) {
    case Family::T: return {2, 3};
    case Family::U: return {1, 2};
    case Family::V: return {1, 3};
  }
  throw std::logic_error("unknown shift-operator family");
}

}  // namespace

ComplexMatrix3 shift_operator(ShiftOperatorId id) {
  const auto [lower, upper] = transition_of(id.family);
  switch (id.component) {
    case Component::Plus: return ket_bra(upper, lower);
    case Component::Minus: return ket_bra(lower, upper);
    case Component::Three: return 0.5 * (ket_bra(upper, upper) - ket_bra(lower, lower));
  }
  throw std::logic_error("unknown shift-operator component");
}

ComplexMatrix3 gell_mann(int index) {
  const Complex i{0.0, 1.0};
  ComplexMatrix3 m = ComplexMatrix3::Zero();
  switch (index) {
    case 1: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case 2: m(0, 1) = -i; m(1, 0) = i; break;
    case 3: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    case 4: m(0, 2) = 1.0; m(2, 0) = 1.0; break;
    case 5: m(0, 2) = -i; m(2, 0) = i; break;
    case 6: m(1, 2) = 1.0; m(2, 1) = 1.0; break;
    case 7: m(1, 2) = -i; m(2, 1) = i; break;
    case 8: {
      const double s = 1.0 / std::sqrt(3.0);
      m(0, 0) = s; m(1, 1) = s; m(2, 2) = -2.0 * s;
      break;
    }
    default: throw std::out_of_range("Gell-Mann index must be in 1..8");
  }
  return m;
}

ComplexMatrix3 commutator(const ComplexMatrix3& a, const ComplexMatrix3& b) {
  return a * b - b * a;
}

Complex expectation(const ComplexMatrix3& rho, const ComplexMatrix3& op) {
  return (rho * op).trace();
}

bool is_hermitian(const ComplexMatrix3& m, double tol) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace su3
}  // namespace eit
