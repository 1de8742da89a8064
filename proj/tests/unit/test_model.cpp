#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/SVD>

#include "eit/errors.hpp"
#include "eit/model.hpp"
#include "test_support.hpp"

using namespace eit;

namespace {

double max_abs(const ComplexMatrix3& m) { return m.cwiseAbs().maxCoeff(); }

ComplexMatrix3 coherent_part(const SystemParams& p, const ComplexMatrix3& rho) {
  return Complex(0.0, 1.0) * su3::commutator(rho, build_hamiltonian_rwa(p));
}

}  // namespace

TEST_CASE("vectorisation is column-major over the 3x3 layout") {
  const ComplexMatrix3 m = testing::random_matrix();
  const StateVector9 v = vectorize(m);
  CHECK(v(1) == m(1, 0));
  CHECK(v(3) == m(0, 1));
  CHECK(max_abs(unvectorize(v) - m) == 0.0);
}

TEST_CASE("Hamiltonian is Hermitian and places couplings on assigned transitions") {
  for (const auto c : testing::kConfigs) {
    for (int trial = 0; trial < 20; ++trial) {
      const SystemParams p = testing::random_params(c);
      const ComplexMatrix3 h = build_hamiltonian_rwa(p);
      CHECK(su3::is_hermitian(h, 0.0));
      const auto [lo, up] = probe_transition(c);
      CHECK(element(h, lo, up) == Complex(p.g_probe));
    }
  }
  const SystemParams lam = reference_params(Configuration::Lambda);
  CHECK(element(build_hamiltonian_rwa(lam), 2, 3) == Complex(105.0));
  const SystemParams vee = reference_params(Configuration::Vee);
  CHECK(element(build_hamiltonian_rwa(vee), 1, 2) == Complex(250.0));
  CHECK(element(build_hamiltonian_rwa(vee), 2, 3) == Complex(0.0));
}

TEST_CASE("decoupled lambda: diagonal Hamiltonian, rho13 precesses at Delta13") {
  SystemParams p{Configuration::Lambda, 0.0, 0.0, 0.1, 6.0, 5.0, 0.0};
  const ComplexMatrix3 h = build_hamiltonian_rwa(p);
  CHECK(max_abs(h - ComplexMatrix3(h.diagonal().asDiagonal())) == 0.0);
  const ComplexMatrix3 rho = testing::random_density();
  const Complex d13 = element(coherent_part(p, rho), 1, 3);
  CHECK(std::abs(d13 - Complex(0.0, 5.0) * element(rho, 1, 3)) < 1e-14);
  const Complex full = element(build_liouvillian(p).apply(rho), 1, 3);
  CHECK(std::abs(full - (Complex(0.0, 5.0) - 6.1) * element(rho, 1, 3)) < 1e-13);
}

TEST_CASE("lambda coherent rho13 matches the Bloch equation term by term") {
  SystemParams p = reference_params(Configuration::Lambda);
  p.delta_probe = 2.5;
  const ComplexMatrix3 rho = testing::random_density();
  const auto r = [&](int a, int b) { return element(rho, a, b); };
  const Complex expected =
      Complex(0.0, 1.0) * (105.0 * r(1, 2) + 2.5 * r(1, 3) + 0.5 * (r(1, 1) - r(3, 3)));
  CHECK(std::abs(element(coherent_part(p, rho), 1, 3) - expected) < 1e-12);
}

TEST_CASE("dissipator population terms") {
  SUBCASE("lambda feeds rho11 at 2 G31 rho33") {
    const SystemParams p = reference_params(Configuration::Lambda);
    const ComplexMatrix3 out = build_dissipator(p).apply(ket_bra(3, 3));
    CHECK(std::abs(element(out, 1, 1) - 0.2) < 1e-15);
    CHECK(std::abs(element(out, 2, 2) - 12.0) < 1e-15);
    CHECK(std::abs(element(out, 3, 3) + 2.0 * 6.1) < 1e-14);
  }
  SUBCASE("no decay, no dissipator") {
    SystemParams p = reference_params(Configuration::Vee);
    p.gamma_a = p.gamma_b = 0.0;
    CHECK(build_dissipator(p).matrix.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("cascade upper level decays, never grows") {
    const SystemParams p = reference_params(Configuration::Cascade);
    const ComplexMatrix3 out = build_dissipator(p).apply(ket_bra(3, 3));
    CHECK(std::abs(element(out, 3, 3) + 2.0 * 3.49) < 1e-14);
    CHECK(std::abs(element(out, 2, 2) - 2.0 * 3.49) < 1e-14);
  }
  SUBCASE("probe coherence decays at the sum of rates out of its upper level") {
    const SystemParams p = reference_params(Configuration::Lambda);
    const ComplexMatrix3 out = build_dissipator(p).apply(ket_bra(1, 3));
    CHECK(std::abs(element(out, 1, 3) + 6.1) < 1e-14);
  }
}

TEST_CASE("Liouvillian agrees with the hand-written Bloch equations") {
  for (const auto c : testing::kConfigs) {
    CAPTURE(to_string(c));
    for (int trial = 0; trial < 100; ++trial) {
      const SystemParams p = testing::random_params(c);
      const ComplexMatrix3 rho = testing::random_density();
      const ComplexMatrix3 diff = build_liouvillian(p).apply(rho) - obe_rhs(p, rho);
      CHECK(max_abs(diff) <= 1e-12);
    }
  }
}

TEST_CASE("Liouvillian preserves trace and hermiticity") {
  for (const auto c : testing::kConfigs) {
    for (int trial = 0; trial < 30; ++trial) {
      const SystemParams p = testing::random_params(c);
      const Liouvillian l = build_liouvillian(p);
      CHECK(l.trace_readout().cwiseAbs().maxCoeff() <= 1e-12);
      const ComplexMatrix3 herm = testing::random_density();
      const ComplexMatrix3 general = testing::random_matrix();
      for (const ComplexMatrix3& rho : {herm, general}) {
        CHECK(max_abs(l.apply(rho.adjoint()) - l.apply(rho).adjoint()) <= 1e-12);
      }
    }
  }
}

TEST_CASE("obe_rhs basics") {
  SystemParams p{Configuration::Lambda, 0.0, 0.0, 0.1, 6.0, 0.0, 0.0};
  const ComplexMatrix3 d = obe_rhs(p, DensityMatrix::maximally_mixed());
  CHECK(std::abs(element(d, 1, 1) - 0.2 / 3.0) < 1e-15);
  CHECK(std::abs(element(d, 2, 2) - 12.0 / 3.0) < 1e-15);
  CHECK(std::abs(element(d, 3, 3) + 2.0 * 6.1 / 3.0) < 1e-15);

  for (const auto c : testing::kConfigs) {
    for (int trial = 0; trial < 20; ++trial) {
      const SystemParams q = testing::random_params(c);
      const ComplexMatrix3 out = obe_rhs(q, testing::random_density());
      CHECK(std::abs(out.trace()) <= 1e-12);
      CHECK(su3::is_hermitian(out, 1e-12));
    }
  }
}

TEST_CASE("pure decay flows downward") {
  for (const auto c : testing::kConfigs) {
    SystemParams p = reference_params(c);
    p.g_probe = p.g_pump = 0.0;
    const ComplexMatrix3 rho = testing::random_density();
    const ComplexMatrix3 d = build_liouvillian(p).apply(rho);
    CHECK(element(d, 3, 3).real() < 0.0);
    if (c == Configuration::Cascade) {
      const double expected = 2.0 * p.gamma_b * element(rho, 3, 3).real() - 2.0 * p.gamma_a * element(rho, 2, 2).real();
      CHECK(std::abs(element(d, 2, 2).real() - expected) < 1e-13);
      CHECK(std::abs(element(d, 1, 1).real() - 2.0 * p.gamma_a * element(rho, 2, 2).real()) < 1e-13);
    }
  }
}

TEST_CASE("lambda reference Liouvillian has a one-dimensional kernel") {
  const Liouvillian l = build_liouvillian(reference_params(Configuration::Lambda));
  Eigen::JacobiSVD<SuperMatrix> svd(l.matrix);
  const auto& s = svd.singularValues();
  CHECK(s(8) <= 1e-12 * s(0));
  CHECK(s(7) > 1e-6 * s(0));
}

TEST_CASE("parameter validation names the field") {
  SystemParams p = reference_params(Configuration::Lambda);
  p.gamma_a = -1.0;
  try {
    p.validate();
    FAIL("expected InvalidParams");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidParams);
    CHECK(std::string(e.what()).find("gamma_a") != std::string::npos);
  }
  p.gamma_a = 0.0;
  p.gamma_b = 0.0;
  CHECK_THROWS_AS(p.validate(), Error);
  CHECK_THROWS_AS(parse_configuration("delta"), Error);
  CHECK(parse_configuration("vee") == Configuration::Vee);
}
