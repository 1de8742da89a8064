#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace eit {

using Complex = std::complex<double>;

// Dense 3x3 complex matrix. Rows and columns are ordered (|3>, |2>, |1>):
// the upper level occupies slot 0 and the ground level slot 2, so the
// element <i|M|j> lives at M(slot(i), slot(j)).
using ComplexMatrix3 = Eigen::Matrix3cd;

/// Bare level label, 1 = lowest, 3 = highest.
enum class Level : int { One = 1, Two = 2, Three = 3 };

constexpr int slot(Level level) noexcept { return 3 - static_cast<int>(level); }
constexpr int slot(int level) noexcept { return 3 - level; }

/// <i|M|j> for level labels i, j in 1..3.
inline Complex& element(ComplexMatrix3& m, int i, int j) { return m(slot(i), slot(j)); }
inline Complex element(const ComplexMatrix3& m, int i, int j) { return m(slot(i), slot(j)); }

/// |i><j| in the repository basis order.
ComplexMatrix3 ket_bra(int i, int j);

namespace su3 {

enum class Family { T, U, V };
enum class Component { Plus, Minus, Three };

// T couples 2<->3, U couples 1<->2, V couples 1<->3. X+ raises, X- lowers,
// X3 = (X+X- - X-X+)/2 so that [X+, X-] = 2 X3.
struct ShiftOperatorId {
  Family family;
  Component component;

  friend constexpr bool operator==(ShiftOperatorId, ShiftOperatorId) = default;
};

inline constexpr std::array<ShiftOperatorId, 9> kAllShiftOperators = {{
    {Family::T, Component::Plus},  {Family::T, Component::Minus}, {Family::T, Component::Three},
    {Family::U, Component::Plus},  {Family::U, Component::Minus}, {Family::U, Component::Three},
    {Family::V, Component::Plus},  {Family::V, Component::Minus}, {Family::V, Component::Three},
}};

ComplexMatrix3 shift_operator(ShiftOperatorId id);

inline ComplexMatrix3 raising(Family f) { return shift_operator({f, Component::Plus}); }
inline ComplexMatrix3 lowering(Family f) { return shift_operator({f, Component::Minus}); }

/// Gell-Mann matrix lambda_index, index in 1..8. Throws std::out_of_range
/// otherwise. Normalised so Tr[lambda_a lambda_b] = 2 delta_ab.
///
/// Entries follow the textbook matrix-index layout, which under the
/// (|3>,|2>,|1>) ordering gives
///   Tr[rho l4] = 2 Re rho13,  Tr[rho l5] = 2 Im rho13,
///   Tr[rho l6] = 2 Re rho12,  Tr[rho l7] = 2 Im rho12,
/// with rho_ij = <i|rho|j>.
ComplexMatrix3 gell_mann(int index);

ComplexMatrix3 commutator(const ComplexMatrix3& a, const ComplexMatrix3& b);

/// Tr[rho * op].
Complex expectation(const ComplexMatrix3& rho, const ComplexMatrix3& op);

bool is_hermitian(const ComplexMatrix3& m, double tol);

}  // namespace su3
}  // namespace eit
