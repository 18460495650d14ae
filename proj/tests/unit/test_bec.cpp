#include <doctest.h>

#include <cmath>
#include <numbers>

#include "decosim/bec.hpp"
#include "decosim/errors.hpp"
#include "test_helpers.hpp"

using namespace decosim;
using namespace decosim::bec;

TEST_CASE("cat construction") {
  const TwoModeState small = make_cat(2, 0, 0.0);
  CHECK(std::abs(small.amplitudes(0) - Complex(1.0 / std::numbers::sqrt2, 0.0)) < 1e-15);
  CHECK(std::abs(small.amplitudes(2) - Complex(1.0 / std::numbers::sqrt2, 0.0)) < 1e-15);
  CHECK(std::abs(small.amplitudes(1)) == 0.0);

  const TwoModeState phased = make_cat(4, 1, std::numbers::pi);
  CHECK(std::abs(phased.amplitudes(1) - Complex(1.0 / std::numbers::sqrt2, 0.0)) < 1e-15);
  CHECK(std::abs(phased.amplitudes(3) + Complex(1.0 / std::numbers::sqrt2, 0.0)) < 1e-12);

  for (int n : {0, 1, 2}) {
    const TwoModeState s = make_cat(5, n, 0.3);
    CHECK(std::abs(s.amplitudes.norm() - 1.0) < 1e-12);
    int nonzero = 0;
    for (int i = 0; i <= 5; ++i)
      if (std::abs(s.amplitudes(i)) > 0.0) ++nonzero;
    CHECK(nonzero <= 2);
  }

  // n = N/2 collapses to a single basis state
  const TwoModeState balanced = make_cat(6, 3, 0.7);
  CHECK(std::abs(balanced.amplitudes(3) - Complex(1.0, 0.0)) < 1e-15);

  CHECK_THROWS_AS(make_cat(4, 3, 0.0), std::invalid_argument);  // canonical ordering
  CHECK_THROWS_AS(make_cat(20000, 0, 0.0), SizeError);
}

TEST_CASE("phase damping leaves the diagonal alone and damps off-diagonals exactly") {
  const TwoModeState cat = make_cat(10, 0, 0.4);
  const DensityMatrix rho0 = density_matrix(cat);
  const PhaseDampingParams params{0.01, 0.3};
  const double t = 1.0;
  const DensityMatrix rho = phase_damp(rho0, params, t);

  for (Index m = 0; m <= 10; ++m)
    CHECK(std::abs(rho.entry(m, m) - rho0.entry(m, m)) < 1e-15);

  for (Index m = 0; m <= 10; ++m)
    for (Index n = 0; n <= 10; ++n) {
      const double diff = double(m - n);
      const Complex expected = rho0.entry(m, n) *
                               std::polar(std::exp(-diff * diff * params.kappa * t),
                                          -params.omega * diff * t);
      CHECK(std::abs(rho.entry(m, n) - expected) < 1e-12);
    }
}

TEST_CASE("maximal cat coherence: closed form and explicit matrix agree") {
  // kappa t chosen so N^2 kappa t = 1 -> the off-diagonal is e^{-1}/2.
  const int n_atoms = 10;
  const double kappa = 1.0;
  const double t = 1.0 / double(n_atoms * n_atoms);
  const DensityMatrix rho = phase_damp(make_cat(n_atoms, 0, 0.0), {kappa, 0.0}, t);
  const double expected = 0.5 * std::exp(-1.0);
  CHECK(std::abs(rho.entry(0, n_atoms)) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(cat_coherence_magnitude(n_atoms, kappa, t) == doctest::Approx(expected).epsilon(1e-15));
  // The same point at realistic scale: N = 1e3, kappa t = 1e-6.
  CHECK(cat_coherence_magnitude(1000, 1e-3, 1e-3) ==
        doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("coherence half-life scales as 1/N^2") {
  const double kappa = 0.37;
  auto half_life = [&](int n) { return std::log(2.0) / (kappa * double(n) * double(n)); };
  // verify half_life is indeed the time where the closed form halves
  CHECK(cat_coherence_magnitude(8, kappa, half_life(8)) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(half_life(16) / half_life(8) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("phase damping is completely positive and a semigroup") {
  std::mt19937 rng(31);
  const CMatrix raw = testutil::random_density(9, rng);
  const DensityMatrix rho{raw};
  const PhaseDampingParams params{0.2, 0.5};

  const DensityMatrix once = phase_damp(phase_damp(rho, params, 0.7), params, 1.1);
  const DensityMatrix direct = phase_damp(rho, params, 1.8);
  CHECK((once.entries() - direct.entries()).cwiseAbs().maxCoeff() < 1e-12);

  for (double t : {0.0, 0.3, 2.0, 20.0}) {
    const DensityMatrix damped = phase_damp(rho, params, t);
    CHECK(damped.min_eigenvalue() > -1e-10);
    CHECK(damped.trace_real() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("cat purity decays monotonically from 1 toward 1/2") {
  const TwoModeState cat = make_cat(6, 0, 0.0);
  const DensityMatrix rho0 = density_matrix(cat);
  CHECK(rho0.purity() == doctest::Approx(1.0).epsilon(1e-12));
  double prev = 2.0;
  for (double t : {0.0, 0.01, 0.05, 0.2, 1.0, 10.0}) {
    const double purity = phase_damp(rho0, {1.0, 0.0}, t).purity();
    CHECK(purity <= prev + 1e-12);
    CHECK(purity > 0.5 - 1e-12);
    prev = purity;
  }
  CHECK(prev == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("single atom loss from the maximal cat") {
  for (int n : {2, 4, 10}) {
    const TwoModeState cat = make_cat(n, 0, 0.0);
    const LossResult loss = annihilate(cat, 1);
    CHECK(!loss.annihilated_to_zero);
    CHECK(loss.norm == doctest::Approx(std::sqrt(double(n) / 2.0)).epsilon(1e-14));
    // post-loss state is |N-1, 0> exactly: pure, single basis amplitude
    CHECK(std::abs(loss.state.amplitudes(n - 1) - Complex(1.0, 0.0)) < 1e-14);
    for (int i = 0; i < n - 1; ++i) CHECK(std::abs(loss.state.amplitudes(i)) == 0.0);
    CHECK(density_matrix(loss.state).purity() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("mode-2 loss mirrors mode-1 loss") {
  const TwoModeState cat = make_cat(4, 0, 0.0);
  const LossResult loss = annihilate(cat, 2);
  CHECK(loss.norm == doctest::Approx(std::numbers::sqrt2).epsilon(1e-14));
  CHECK(std::abs(loss.state.amplitudes(0) - Complex(1.0, 0.0)) < 1e-14);  // |0, 3>
}

TEST_CASE("annihilating an empty mode flags the zero vector") {
  TwoModeState vac;
  vac.total_atoms = 3;
  vac.amplitudes = CVector::Zero(4);
  vac.amplitudes(0) = 1.0;  // |0, 3>
  const LossResult loss = annihilate(vac, 1);
  CHECK(loss.annihilated_to_zero);
  CHECK(loss.norm == 0.0);
}

TEST_CASE("loss-rate calibration round trips and cross-checks the quoted scales") {
  const LossReference ref{5.3e-9, 10.0, 1e3, 1e-3};
  const LossCalibration cal = calibrate_tau(ref);
  CHECK(cal.predict_tau(ref.scattering_length, ref.n_noncondensed, ref.n_atoms) ==
        doctest::Approx(ref.tau_d).epsilon(1e-12));

  // Larger cat: N_nc = 1e4, N = 1e7 -> 1e-14 s, within 1.5 orders of 1e-13 s.
  const double predicted = cal.predict_tau(ref.scattering_length, 1e4, 1e7);
  CHECK(predicted == doctest::Approx(1e-14).epsilon(1e-9));
  CHECK(std::abs(std::log10(predicted) - std::log10(1e-13)) <= 1.5);

  CHECK(cal.predict_tau(ref.scattering_length, 20.0, 1e3) ==
        doctest::Approx(0.5e-3).epsilon(1e-12));
}

TEST_CASE("condensation regime check") {
  CondensationCheck rb;
  rb.mass = 87.0 * 1.66053906660e-27;
  rb.temperature = 100e-9;
  rb.density = 1e20;

  // Oracle: direct evaluation of (2 pi hbar^2 / (m k_B T))^(1/2).
  const double hbar = 1.054571817e-34;
  const double expected =
      std::sqrt(2.0 * std::numbers::pi * hbar * hbar / (rb.mass * 1.380649e-23 * 100e-9));
  CHECK(expected == doctest::Approx(5.9189e-7).epsilon(1e-4));
  CHECK(rb.thermal_wavelength() == doctest::Approx(expected).epsilon(1e-12));

  CondensationCheck hot = rb;
  hot.temperature = 4.0 * rb.temperature;
  CHECK(hot.thermal_wavelength() ==
        doctest::Approx(0.5 * rb.thermal_wavelength()).epsilon(1e-12));

  CHECK(rb.interparticle() == doctest::Approx(2.1544e-7).epsilon(1e-4));
  const CondensationRegime regime = condensation_regime(rb);
  CHECK(regime.ratio == doctest::Approx(expected / rb.interparticle()).epsilon(1e-12));
  CHECK(regime.ratio > 1.0);
  CHECK(regime.condensed_hint);

  CondensationCheck warm = rb;
  warm.temperature = 1e-3;  // a millikelvin gas is nowhere near condensed
  CHECK(!condensation_regime(warm).condensed_hint);
}
