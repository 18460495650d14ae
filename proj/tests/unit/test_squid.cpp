#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "decosim/errors.hpp"
#include "decosim/squid.hpp"

using namespace decosim;
using namespace decosim::squid;

namespace {

SquidParams default_params(int n_points = 1024) {
  SquidParams p;
  p.grid.n = n_points;
  return p;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = a + (b - a) * double(i) / double(n - 1);
  return out;
}

// Least-squares fit y = a + b x; returns R^2.
double linear_fit_r2(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = int(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) sx += x[i], sy += y[i], sxx += x[i] * x[i], sxy += x[i] * y[i];
  const double b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double a = (sy - b * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double mean = sy / n;
  for (int i = 0; i < n; ++i) {
    ss_res += (y[i] - a - b * x[i]) * (y[i] - a - b * x[i]);
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  return 1.0 - ss_res / ss_tot;
}

}  // namespace

TEST_CASE("spectrum wavefunctions are orthonormal on the grid") {
  const SquidSpectrum spec = solve_spectrum(default_params(), 6);
  const double h = spec.params.grid.spacing();
  for (int a = 0; a < 6; ++a) {
    for (int b = a; b < 6; ++b) {
      double ip = 0.0;
      for (int i = 0; i < spec.n_points(); ++i)
        ip += spec.wavefunctions(i, a) * spec.wavefunctions(i, b) * h;
      CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) < 1e-8);
    }
  }
  CHECK(spec.edge_weight < 1e-6);
}

TEST_CASE("the potential is symmetric about the symmetric bias point") {
  const SquidParams p = default_params();
  for (int i = 0; i < 400; ++i) {
    const double delta = 1.3 * double(i) / 400.0;
    CHECK(std::abs(potential(p, 0.5 + delta) - potential(p, 0.5 - delta)) < 1e-12);
  }
  const SquidSpectrum spec = solve_spectrum(p, 4);
  CHECK(std::abs(spec.mean_flux_l + spec.mean_flux_r - 1.0) < 1e-6);
  CHECK(spec.mean_flux_l < p.external_flux);
  CHECK(spec.mean_flux_r > p.external_flux);
}

TEST_CASE("doubling the grid changes the splitting by less than 0.1%") {
  const SquidSpectrum coarse = solve_spectrum(default_params(1024), 4);
  const SquidSpectrum fine = solve_spectrum(default_params(2048), 4);
  CHECK(std::abs(fine.delta_e - coarse.delta_e) / fine.delta_e < 1e-3);
}

TEST_CASE("splitting decays exponentially in sqrt(C)") {
  std::vector<double> sqrt_c, log_de;
  for (int i = 0; i < 8; ++i) {
    SquidParams p = default_params();
    p.capacitance = 50.0 * std::pow(16.0, double(i) / 7.0);
    const SquidSpectrum spec = solve_spectrum(p, 2);
    sqrt_c.push_back(std::sqrt(p.capacitance));
    log_de.push_back(std::log(spec.delta_e));
  }
  CHECK(linear_fit_r2(sqrt_c, log_de) > 0.99);
}

TEST_CASE("model regime errors") {
  SquidParams shallow = default_params();
  shallow.critical_current = 0.05;  // no double well
  CHECK_THROWS_AS(solve_spectrum(shallow, 2), ModelRegimeError);

  SquidParams light = default_params();
  light.capacitance = 2.0;  // doublet above the barrier
  CHECK_THROWS_AS(solve_spectrum(light, 2), ModelRegimeError);
}

TEST_CASE("closed-form tunneling probability") {
  CHECK(tunneling_probability(0.5, 0.0) == doctest::Approx(1.0));
  CHECK(tunneling_probability(0.5, std::numbers::pi / 0.5) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(tunneling_probability(0.5, std::numbers::pi / (2.0 * 0.5)) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(tunneling_probability(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("full evolution: stationary states stay put") {
  const SquidSpectrum spec = solve_spectrum(default_params(512), 4);
  const double h = spec.params.grid.spacing();
  CVector psi0(spec.n_points());
  for (int i = 0; i < spec.n_points(); ++i) psi0(i) = spec.wavefunctions(i, 0) * std::sqrt(h);
  const StateVector ground{psi0};
  const auto states = evolve_full(spec, ground, linspace(0.0, 50.0, 7));
  for (const auto& s : states) {
    CHECK(std::abs(s.norm() - 1.0) < 1e-8);
    CHECK(std::norm(ground.overlap(s)) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("full evolution: |L> oscillates as cos^2 and revives") {
  const SquidSpectrum spec = solve_spectrum(default_params(1024), 6);
  const double period = 2.0 * std::numbers::pi / spec.delta_e;
  const auto times = linspace(0.0, period, 64);
  const auto states = evolve_full(spec, spec.l_state, times);

  double rms = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double pl = std::norm(spec.l_state.overlap(states[k]));
    const double expected = tunneling_probability(spec.delta_e, times[k]);
    rms += (pl - expected) * (pl - expected);
    CHECK(std::abs(states[k].norm() - 1.0) < 1e-8);
  }
  rms = std::sqrt(rms / double(times.size()));
  CHECK(rms < 0.02);

  const double revival = std::norm(spec.l_state.overlap(states.back()));
  CHECK(revival > 0.99);
}

TEST_CASE("full evolution rejects states outside the retained modes") {
  const SquidSpectrum spec = solve_spectrum(default_params(512), 2);
  const StateVector spike = StateVector::basis_state(spec.n_points(), spec.n_points() / 2);
  CHECK_THROWS_AS(evolve_full(spec, spike, {0.0, 1.0}), TruncationError);
}

TEST_CASE("two-level closed system reproduces the closed form") {
  const double delta_e = 0.8;
  CMatrix rho0(2, 2);
  rho0 << 1.0, 0.0, 0.0, 0.0;
  const auto times = linspace(0.0, 3.0 * 2.0 * std::numbers::pi / delta_e, 80);
  const auto traj = evolve_two_level(delta_e, {0.0}, rho0, times);
  for (std::size_t k = 0; k < times.size(); ++k) {
    CHECK(std::abs(traj.p_left[k] - tunneling_probability(delta_e, times[k])) < 1e-6);
    CHECK(std::abs(traj.rho[k].trace().real() - 1.0) < 1e-9);
  }
}

TEST_CASE("pure dephasing matches the exact channel") {
  const double gamma = 0.7;
  CMatrix cat(2, 2);
  cat << 0.5, 0.5, 0.5, 0.5;
  const auto times = linspace(0.0, 4.0 / gamma, 40);
  const auto traj = evolve_two_level(0.0, {gamma}, cat, times);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double expected = 0.5 * std::exp(-2.0 * gamma * times[k]);
    CHECK(std::abs(std::abs(traj.rho[k](0, 1)) - expected) < 1e-8);
    // populations frozen: pure dephasing conserves the diagonal
    CHECK(std::abs(traj.rho[k](0, 0).real() - 0.5) < 1e-9);
    CHECK(std::abs(traj.rho[k](1, 1).real() - 0.5) < 1e-9);
    CHECK(DensityMatrix{traj.rho[k]}.min_eigenvalue() > -1e-9);
  }
}

TEST_CASE("strong dephasing freezes tunneling in the pointer basis") {
  const double delta_e = 1.0;
  const double gamma = 100.0 * delta_e;
  CMatrix rho0(2, 2);
  rho0 << 1.0, 0.0, 0.0, 0.0;
  const auto times = linspace(0.0, 10.0 / delta_e, 21);
  const auto traj = evolve_two_level(delta_e, {gamma}, rho0, times);
  for (double pl : traj.p_left) CHECK(pl > 0.9);
}

TEST_CASE("wigner snapshots: negativity decays while peaks stay put") {
  SquidParams p = default_params(512);
  p.capacitance = 300.0;  // deep-well regime: mixture residual well below 1%
  const SquidSpectrum spec = solve_spectrum(p, 4);
  CMatrix cat(2, 2);
  cat << 0.5, 0.5, 0.5, 0.5;
  const double gamma = 1.0;
  const auto traj = evolve_two_level(0.0, {gamma}, cat, {0.0, 1.0, 2.5, 5.0});
  const auto snaps = wigner_snapshots(spec, traj);

  for (const auto& w : snaps) CHECK(std::abs(w.sum_times_area() - 1.0) < 1e-6);
  CHECK(snaps.front().min_value() < -1e-3);

  const auto m0 = analyze_cat_wigner(snaps.front(), spec.mean_flux_l, spec.mean_flux_r);
  const auto m_end = analyze_cat_wigner(snaps.back(), spec.mean_flux_l, spec.mean_flux_r);
  CHECK(m_end.interference_amplitude <= 0.01 * m_end.peak_value);
  const double cell = (snaps[0].x_max - snaps[0].x_min) / snaps[0].nx;
  CHECK(std::abs(m_end.left_peak_x - m0.left_peak_x) <= cell + 1e-12);
  CHECK(std::abs(m_end.right_peak_x - m0.right_peak_x) <= cell + 1e-12);

  // interference decays monotonically within sampling noise
  double prev = 1e300;
  for (const auto& w : snaps) {
    const double amp =
        analyze_cat_wigner(w, spec.mean_flux_l, spec.mean_flux_r).interference_amplitude;
    CHECK(amp <= prev + 1e-9);
    prev = amp;
  }
}

TEST_CASE("SI parameter conversion reproduces the reduced defaults") {
  // Device values chosen to map onto (C = 100, i_c = 2).
  const double phi0 = 2.067833848461929e-15;
  const double inductance = 2.0 * phi0 / 2e-6;  // i_c = Ic L / Phi_0 = 2
  const double hbar = 1.054571817e-34;
  const double capacitance = 100.0 * hbar * hbar * inductance / (phi0 * phi0 * phi0 * phi0);
  const ReducedUnits r = params_from_si(capacitance, inductance, 2e-6);
  CHECK(r.params.capacitance == doctest::Approx(100.0).epsilon(1e-6));
  CHECK(r.params.critical_current == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(r.energy_unit_joule == doctest::Approx(phi0 * phi0 / inductance).epsilon(1e-9));
  CHECK(r.params.beta_l() == doctest::Approx(2.0 * std::numbers::pi * 2.0).epsilon(1e-9));
}
