#include <doctest.h>

#include <cmath>
#include <vector>

#include "decosim/errors.hpp"
#include "decosim/wigner.hpp"

using namespace decosim;

namespace {

const UniformGrid kGrid{-8.0, 8.0, 256};

CVector gaussian_on_grid(double center, double width) {
  CVector v(kGrid.n);
  for (int i = 0; i < kGrid.n; ++i) {
    const double x = kGrid.point(i);
    v(i) = std::exp(-0.5 * (x - center) * (x - center) / (width * width));
  }
  v /= v.norm();
  return v;
}

DensityMatrix cat_density(double separation) {
  CVector cat = gaussian_on_grid(-separation, 1.0) + gaussian_on_grid(separation, 1.0);
  cat /= cat.norm();
  return DensityMatrix::pure(StateVector(cat));
}

DensityMatrix dephased_mixture(double separation) {
  const CVector l = gaussian_on_grid(-separation, 1.0);
  const CVector r = gaussian_on_grid(separation, 1.0);
  CMatrix rho = 0.5 * (l * l.adjoint()) + 0.5 * (r * r.adjoint());
  rho = 0.5 * (rho + rho.adjoint().eval());
  return DensityMatrix{rho};
}

// Interference band: |W| over the middle between the humps.
double interference_amplitude(const WignerGrid& w, double band_halfwidth) {
  const double cell = (w.x_max - w.x_min) / w.nx;
  double amp = 0.0;
  for (int j = 0; j < w.nx; ++j) {
    const double x = w.x_min + j * cell;
    if (std::abs(x) <= band_halfwidth) amp = std::max(amp, w.values.row(j).cwiseAbs().maxCoeff());
  }
  return amp;
}

}  // namespace

TEST_CASE("gaussian ground state has a non-negative, normalized Wigner function") {
  const DensityMatrix rho = DensityMatrix::pure(StateVector(gaussian_on_grid(0.0, 1.0)));
  const WignerGrid w = wigner(rho, kGrid, {64, 256});
  CHECK(w.min_value() > -1e-9);
  CHECK(std::abs(w.sum_times_area() - 1.0) < 1e-6);
}

TEST_CASE("two-peak cat shows interference negativity between the peaks") {
  const WignerGrid w = wigner(cat_density(3.0), kGrid, {64, 256});
  CHECK(w.min_value() < -1e-3);
  CHECK(std::abs(w.sum_times_area() - 1.0) < 1e-6);
}

TEST_CASE("fully dephased mixture has interference below 1% of the peak") {
  const WignerGrid w = wigner(dephased_mixture(3.0), kGrid, {64, 256});
  CHECK(std::abs(w.sum_times_area() - 1.0) < 1e-6);
  CHECK(interference_amplitude(w, 0.75) <= 0.01 * w.max_value());
}

TEST_CASE("non-uniform explicit bases are rejected") {
  std::vector<double> xs(kGrid.n);
  for (int i = 0; i < kGrid.n; ++i) xs[i] = kGrid.point(i);
  const DensityMatrix rho = DensityMatrix::pure(StateVector(gaussian_on_grid(0.0, 1.0)));
  CHECK_NOTHROW(wigner(rho, xs, WignerSpec{64, 128}));
  xs[100] += 0.01;
  CHECK_THROWS_AS(wigner(rho, xs, WignerSpec{64, 128}), UnsupportedBasisError);
}

TEST_CASE("wigner transform is deterministic") {
  const DensityMatrix rho = cat_density(2.0);
  const WignerGrid a = wigner(rho, kGrid, {32, 64});
  const WignerGrid b = wigner(rho, kGrid, {32, 64});
  CHECK((a.values - b.values).cwiseAbs().maxCoeff() == 0.0);
}
