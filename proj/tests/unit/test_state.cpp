#include <doctest.h>

#include <cmath>

#include "decosim/constants.hpp"
#include "decosim/errors.hpp"
#include "decosim/state.hpp"
#include "test_helpers.hpp"

using namespace decosim;

TEST_CASE("state vector normalization and overlap") {
  CVector v(2);
  v << Complex(3.0, 0.0), Complex(0.0, 4.0);
  StateVector psi(v);
  CHECK(psi.norm() == doctest::Approx(5.0));
  const StateVector unit = psi.normalized();
  CHECK(std::abs(unit.norm() - 1.0) < 1e-12);

  const StateVector e0 = StateVector::basis_state(2, 0);
  CHECK(std::abs(e0.overlap(unit) - Complex(0.6, 0.0)) < 1e-12);
}

TEST_CASE("density matrix invariants are enforced") {
  CMatrix bad(2, 2);
  bad << Complex(1.0, 0.0), Complex(0.0, 0.5), Complex(0.0, 0.5), Complex(0.0, 0.0);
  CHECK_THROWS_AS(DensityMatrix{bad}, std::invalid_argument);

  CMatrix off_trace = CMatrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix{off_trace}, std::invalid_argument);

  const DensityMatrix rho = DensityMatrix::pure(StateVector::basis_state(3, 1));
  CHECK(rho.trace_real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rho.purity() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rho.min_eigenvalue() > -1e-12);
}

TEST_CASE("hermitian operator rejects non-hermitian input") {
  CMatrix m(2, 2);
  m << Complex(0.0, 0.0), Complex(1.0, 0.0), Complex(2.0, 0.0), Complex(0.0, 0.0);
  CHECK_THROWS_AS(HermitianOperator{m}, std::invalid_argument);
  CHECK_NOTHROW(HermitianOperator{pauli_x()});
  CHECK_NOTHROW(HermitianOperator{pauli_y()});
  CHECK_NOTHROW(HermitianOperator{pauli_z()});
}

TEST_CASE("flux quantum equals h over 2e") {
  const double derived = constants.h / (2.0 * constants.elementary_charge);
  CHECK(std::abs(constants.Phi_0 - derived) / derived < 1e-9);
}

TEST_CASE("operations are pure: repeated evaluation is bit-identical") {
  std::mt19937 rng(42);
  const CMatrix rho = testutil::random_density(4, rng);
  const DensityMatrix a{rho};
  const DensityMatrix b{rho};
  CHECK(a.purity() == b.purity());
  CHECK(a.min_eigenvalue() == b.min_eigenvalue());
}
