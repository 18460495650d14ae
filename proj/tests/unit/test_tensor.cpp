#include <doctest.h>

#include <cmath>
#include <numbers>

#include "decosim/errors.hpp"
#include "decosim/tensor.hpp"
#include "test_helpers.hpp"

using namespace decosim;

namespace {

DensityMatrix maximally_mixed(Index dim) {
  return DensityMatrix{CMatrix::Identity(dim, dim) / double(dim)};
}

}  // namespace

TEST_CASE("tensor of basis states lands on the a-major index") {
  const StateVector zero = StateVector::basis_state(2, 0);
  const StateVector one = StateVector::basis_state(2, 1);
  const StateVector prod = tensor(zero, one);
  REQUIRE(prod.dim() == 4);
  CHECK(std::abs(prod.amplitude(1) - Complex(1.0, 0.0)) < 1e-15);

  CVector plus(2);
  plus << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
  const StateVector mixed = tensor(StateVector(plus), zero);
  CHECK(std::abs(mixed.amplitude(0) - Complex(1.0 / std::numbers::sqrt2, 0.0)) < 1e-15);
  CHECK(std::abs(mixed.amplitude(1)) < 1e-15);
  CHECK(std::abs(mixed.amplitude(2) - Complex(1.0 / std::numbers::sqrt2, 0.0)) < 1e-15);
  CHECK(std::abs(mixed.amplitude(3)) < 1e-15);
}

TEST_CASE("tensor of maximally mixed halves gives I/4") {
  const DensityMatrix prod = tensor(maximally_mixed(2), maximally_mixed(2));
  REQUIRE(prod.dim() == 4);
  CHECK((prod.entries() - CMatrix::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("tensor dimension cap") {
  const DensityMatrix big = maximally_mixed(2048);
  CHECK_THROWS_AS(tensor(big, big), SizeError);
}

TEST_CASE("partial trace of a Bell state is maximally mixed") {
  CVector bell(4);
  bell << 1.0 / std::numbers::sqrt2, 0.0, 0.0, 1.0 / std::numbers::sqrt2;
  const DensityMatrix rho = DensityMatrix::pure(StateVector(bell));
  const DensityMatrix reduced = partial_trace(rho, {2, 2}, 0);
  CHECK((reduced.entries() - CMatrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partial trace factorizes product states") {
  std::mt19937 rng(7);
  const DensityMatrix a{testutil::random_density(3, rng)};
  const DensityMatrix b{testutil::random_density(4, rng)};
  const DensityMatrix joint = tensor(a, b);
  const DensityMatrix back_a = partial_trace(joint, {3, 4}, 0);
  const DensityMatrix back_b = partial_trace(joint, {3, 4}, 1);
  CHECK((back_a.entries() - a.entries()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((back_b.entries() - b.entries()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("equal-amplitude two-branch state reduces to diag(1/2, 1/2)") {
  // (e^{i phi1}|a1>|b1> + e^{i phi2}|a2>|b2>)/sqrt(2) in the Schmidt bases.
  const double phi1 = 0.3, phi2 = -1.1;
  CVector psi = CVector::Zero(4);
  psi(0) = std::polar(1.0 / std::numbers::sqrt2, phi1);  // |0>|0>
  psi(3) = std::polar(1.0 / std::numbers::sqrt2, phi2);  // |1>|1>
  const DensityMatrix rho = DensityMatrix::pure(StateVector(psi));
  const DensityMatrix reduced = partial_trace(rho, {2, 2}, 0);
  CHECK(std::abs(reduced.entry(0, 0) - Complex(0.5, 0.0)) < 1e-12);
  CHECK(std::abs(reduced.entry(1, 1) - Complex(0.5, 0.0)) < 1e-12);
  CHECK(std::abs(reduced.entry(0, 1)) < 1e-12);
}

TEST_CASE("dims mismatch raises a shape error") {
  const DensityMatrix rho = maximally_mixed(6);
  CHECK_THROWS_AS(partial_trace(rho, {2, 2}, 0), ShapeError);
}

TEST_CASE("tensor then partial trace round trips within 1e-12") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Index da = 2 + (rng() % 3), db = 2 + (rng() % 3);
    const DensityMatrix a{testutil::random_density(da, rng)};
    const DensityMatrix b{testutil::random_density(db, rng)};
    const DensityMatrix back = partial_trace(tensor(a, b), {da, db}, 0);
    CHECK((back.entries() - a.entries()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("partial trace over a multi-factor subset keeps order and trace") {
  std::mt19937 rng(13);
  const DensityMatrix a{testutil::random_density(2, rng)};
  const DensityMatrix b{testutil::random_density(3, rng)};
  const DensityMatrix c{testutil::random_density(2, rng)};
  const DensityMatrix joint = tensor(tensor(a, b), c);
  const DensityMatrix ac = partial_trace_keep(joint, {2, 3, 2}, {0, 2});
  CHECK((ac.entries() - tensor(a, c).entries()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(ac.trace_real() == doctest::Approx(1.0).epsilon(1e-12));
}
