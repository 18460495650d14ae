#include <doctest.h>

#include <cmath>

#include "decosim/entropy.hpp"
#include "decosim/errors.hpp"
#include "decosim/tensor.hpp"
#include "test_helpers.hpp"

using namespace decosim;

TEST_CASE("pure states have zero entropy") {
  const DensityMatrix rho = DensityMatrix::pure(StateVector::basis_state(4, 2));
  CHECK(std::abs(von_neumann_entropy(rho)) < 1e-9);
}

TEST_CASE("maximally mixed qubit carries one bit") {
  const DensityMatrix rho{CMatrix::Identity(2, 2) / 2.0};
  CHECK(von_neumann_entropy(rho, EntropyBase::bits) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(von_neumann_entropy(rho, EntropyBase::nats) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("diag(1/4, 3/4) entropy matches the direct evaluation") {
  // Oracle: -sum p log2 p computed right here, independent of the library.
  const double expected = -(0.25 * std::log2(0.25) + 0.75 * std::log2(0.75));
  CHECK(expected == doctest::Approx(0.8112781244591328).epsilon(1e-15));

  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = 0.25;
  m(1, 1) = 0.75;
  CHECK(von_neumann_entropy(DensityMatrix{m}) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("eigenvalues slightly below zero are clamped, larger ones rejected") {
  CMatrix ok = CMatrix::Zero(2, 2);
  ok(0, 0) = 1.0 + 5e-11;
  ok(1, 1) = -5e-11;
  CHECK(std::abs(von_neumann_entropy(DensityMatrix{ok})) < 1e-8);

  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 0) = 1.0 + 1e-7;
  bad(1, 1) = -1e-7;
  CHECK_THROWS_AS(von_neumann_entropy(DensityMatrix{bad}), NumericError);
}

TEST_CASE("subadditivity on random two-qubit states") {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 25; ++trial) {
    const DensityMatrix joint{testutil::random_density(4, rng)};
    const double h_joint = von_neumann_entropy(joint);
    const double h_a = von_neumann_entropy(partial_trace(joint, {2, 2}, 0));
    const double h_b = von_neumann_entropy(partial_trace(joint, {2, 2}, 1));
    CHECK(h_joint <= h_a + h_b + 1e-9);
  }
}
