#include "decosim/squid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "decosim/constants.hpp"
#include "decosim/detail/tridiag.hpp"
#include "decosim/errors.hpp"

namespace decosim::squid {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double SquidParams::beta_l() const { return kTwoPi * critical_current; }

double potential(const SquidParams& p, double phi) {
  const double d = phi - p.external_flux;
  return 0.5 * d * d - p.critical_current / kTwoPi * std::cos(kTwoPi * phi);
}

void SquidParams::validate() const {
  grid.validate();
  if (capacitance <= 0.0) throw std::invalid_argument("capacitance must be > 0");
  if (critical_current <= 0.0) throw std::invalid_argument("critical_current must be > 0");
  if (grid.n < 256) throw std::invalid_argument("n_points must be >= 256");
  if (!(grid.min < external_flux && external_flux < grid.max))
    throw std::invalid_argument("grid must bracket the external flux");

  int minima = 0;
  for (int i = 1; i + 1 < grid.n; ++i) {
    const double um = potential(*this, grid.point(i - 1));
    const double u0 = potential(*this, grid.point(i));
    const double up = potential(*this, grid.point(i + 1));
    if (u0 < um && u0 < up) ++minima;
  }
  if (minima < 2)
    throw ModelRegimeError(
        "potential has fewer than two local minima on the grid; "
        "critical_current is too small for a double well");
}

ReducedUnits params_from_si(double capacitance_farad, double inductance_henry,
                            double critical_current_ampere, double external_flux) {
  if (capacitance_farad <= 0 || inductance_henry <= 0 || critical_current_ampere <= 0)
    throw std::invalid_argument("SI device parameters must be > 0");
  const double phi0 = constants.Phi_0;
  const double energy_unit = phi0 * phi0 / inductance_henry;
  ReducedUnits out;
  // Kinetic prefactor: hbar^2/(2 C_SI Phi_0^2) in units of Phi_0^2/L
  // equals 1/(2 C_red) with C_red = C_SI Phi_0^4 / (hbar^2 L).
  out.params.capacitance = capacitance_farad * phi0 * phi0 * energy_unit /
                           (constants.hbar * constants.hbar);
  out.params.critical_current = critical_current_ampere * inductance_henry / phi0;
  out.params.external_flux = external_flux;
  out.params.grid = UniformGrid{external_flux - 1.5, external_flux + 1.5, 1024};
  out.energy_unit_joule = energy_unit;
  out.time_unit_second = constants.hbar / energy_unit;
  return out;
}

SquidSpectrum solve_spectrum(const SquidParams& params, int n_levels) {
  params.validate();
  if (n_levels < 2) throw std::invalid_argument("need at least 2 levels");
  const int n = params.grid.n;
  if (n_levels > n / 4) throw std::invalid_argument("too many levels for this grid");

  const double h = params.grid.spacing();
  const double kinetic = 1.0 / (2.0 * params.capacitance * h * h);
  RVector diag(n), offdiag(n - 1);
  for (int i = 0; i < n; ++i)
    diag(i) = 2.0 * kinetic + potential(params, params.grid.point(i));
  offdiag.setConstant(-kinetic);

  detail::TridiagEigenResult eig = detail::lowest_eigenpairs(diag, offdiag, n_levels);

  SquidSpectrum spec;
  spec.params = params;
  spec.energies.assign(eig.eigenvalues.data(), eig.eigenvalues.data() + n_levels);
  spec.delta_e = std::max(spec.energies[1] - spec.energies[0], 0.0);

  // Continuum normalization: sum psi^2 h = 1.
  spec.wavefunctions = eig.eigenvectors / std::sqrt(h);

  // Barrier top between the two deepest minima (the biased quadratic adds
  // shallow side wells one flux quantum out; those are not the tunneling
  // pair).
  std::vector<std::pair<double, int>> minima;
  for (int i = 1; i + 1 < n; ++i) {
    const double um = potential(params, params.grid.point(i - 1));
    const double u0 = potential(params, params.grid.point(i));
    const double up = potential(params, params.grid.point(i + 1));
    if (u0 < um && u0 < up) minima.emplace_back(u0, i);
  }
  std::sort(minima.begin(), minima.end());
  const int i_min_l = std::min(minima[0].second, minima[1].second);
  const int i_min_r = std::max(minima[0].second, minima[1].second);
  double barrier = -std::numeric_limits<double>::infinity();
  for (int i = i_min_l; i <= i_min_r; ++i)
    barrier = std::max(barrier, potential(params, params.grid.point(i)));
  spec.barrier_height = barrier;
  if (!(spec.energies[0] < barrier && spec.energies[1] < barrier))
    throw ModelRegimeError(
        "fewer than 2 bound states below the barrier (E0=" +
        std::to_string(spec.energies[0]) + ", E1=" + std::to_string(spec.energies[1]) +
        ", barrier=" + std::to_string(barrier) + ")");

  // Localized combinations; the label L goes to the smaller mean flux.
  RVector plus = (spec.wavefunctions.col(0) + spec.wavefunctions.col(1)) / std::numbers::sqrt2;
  RVector minus = (spec.wavefunctions.col(0) - spec.wavefunctions.col(1)) / std::numbers::sqrt2;
  auto mean_flux = [&](const RVector& psi) {
    double m = 0.0;
    for (int i = 0; i < n; ++i) m += params.grid.point(i) * psi(i) * psi(i) * h;
    return m;
  };
  double mp = mean_flux(plus), mm = mean_flux(minus);
  if (mp > mm) {
    std::swap(plus, minus);
    std::swap(mp, mm);
  }
  spec.mean_flux_l = mp;
  spec.mean_flux_r = mm;
  const double sqrt_h = std::sqrt(h);
  spec.l_state = StateVector((plus * sqrt_h).cast<Complex>());
  spec.r_state = StateVector((minus * sqrt_h).cast<Complex>());

  // Weight of the tunneling doublet in the outer 10% of the grid; large
  // values mean the window truncates the states everything else is built
  // from. (Levels above the barrier are delocalized and may touch the
  // walls; that is fine.)
  const int edge = std::max(1, n / 10);
  double worst = 0.0;
  for (int k = 0; k < 2; ++k) {
    double wgt = 0.0;
    for (int i = 0; i < edge; ++i)
      wgt += (spec.wavefunctions(i, k) * spec.wavefunctions(i, k) +
              spec.wavefunctions(n - 1 - i, k) * spec.wavefunctions(n - 1 - i, k)) *
             h;
    worst = std::max(worst, wgt);
  }
  spec.edge_weight = worst;
  return spec;
}

double tunneling_probability(double delta_e, double t) {
  if (delta_e <= 0.0) throw std::invalid_argument("delta_e must be > 0");
  const double c = std::cos(0.5 * delta_e * t);
  return c * c;
}

std::vector<StateVector> evolve_full(const SquidSpectrum& spectrum, const StateVector& initial,
                                     const std::vector<double>& times) {
  const int n = spectrum.n_points();
  if (initial.dim() != n) throw ShapeError("initial state does not live on the flux grid");
  if (std::abs(initial.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("initial state must be normalized");

  const int k = spectrum.n_levels();
  const double sqrt_h = std::sqrt(spectrum.params.grid.spacing());
  CVector coeff(k);
  for (int m = 0; m < k; ++m) {
    Complex c(0.0, 0.0);
    for (int i = 0; i < n; ++i)
      c += spectrum.wavefunctions(i, m) * sqrt_h * initial.amplitude(i);
    coeff(m) = c;
  }
  const double residual = 1.0 - coeff.squaredNorm();
  if (residual > 0.01)
    throw TruncationError("initial state has " + std::to_string(residual * 100.0) +
                              "% weight outside the retained modes",
                          residual);

  std::vector<StateVector> out;
  out.reserve(times.size());
  for (double t : times) {
    CVector psi = CVector::Zero(n);
    for (int m = 0; m < k; ++m) {
      const Complex phase = std::polar(1.0, -spectrum.energies[m] * t) * coeff(m);
      for (int i = 0; i < n; ++i) psi(i) += phase * spectrum.wavefunctions(i, m) * sqrt_h;
    }
    out.emplace_back(std::move(psi));
  }
  return out;
}

namespace {

// RHS of the two-level master equation in the {|L>, |R>} basis.
Eigen::Matrix2cd master_rhs(const Eigen::Matrix2cd& rho, double delta_e, double gamma) {
  static const Complex I(0.0, 1.0);
  Eigen::Matrix2cd h;
  h << 0.0, -0.5 * delta_e, -0.5 * delta_e, 0.0;
  Eigen::Matrix2cd sz;
  sz << 1.0, 0.0, 0.0, -1.0;
  Eigen::Matrix2cd out = -I * (h * rho - rho * h);
  out += gamma * (sz * rho * sz - rho);
  return out;
}

}  // namespace

TwoLevelTrajectory evolve_two_level(double delta_e, const DephasingModel& model,
                                    const CMatrix& initial, const std::vector<double>& times) {
  if (delta_e < 0.0) throw std::invalid_argument("delta_e must be >= 0");
  if (model.gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
  if (initial.rows() != 2 || initial.cols() != 2)
    throw ShapeError("two-level state must be 2x2");
  (void)DensityMatrix(CMatrix(initial));  // validates Hermiticity and trace
  if (!std::is_sorted(times.begin(), times.end()))
    throw std::invalid_argument("times must be ascending");
  if (!times.empty() && times.front() < 0.0)
    throw std::invalid_argument("times must be >= 0");

  const double rate = std::max(delta_e, model.gamma);
  const double max_step = rate > 0.0 ? 1.0 / (100.0 * rate) : 1.0;

  TwoLevelTrajectory traj;
  traj.times = times;
  traj.rho.reserve(times.size());
  traj.p_left.reserve(times.size());

  Eigen::Matrix2cd rho = initial;
  double t_now = 0.0;
  for (double target : times) {
    const double span = target - t_now;
    if (span > 0.0) {
      const int steps = std::max(1, static_cast<int>(std::ceil(span / max_step)));
      const double dt = span / steps;
      for (int s = 0; s < steps; ++s) {
        const Eigen::Matrix2cd k1 = master_rhs(rho, delta_e, model.gamma);
        const Eigen::Matrix2cd k2 = master_rhs(rho + 0.5 * dt * k1, delta_e, model.gamma);
        const Eigen::Matrix2cd k3 = master_rhs(rho + 0.5 * dt * k2, delta_e, model.gamma);
        const Eigen::Matrix2cd k4 = master_rhs(rho + dt * k3, delta_e, model.gamma);
        rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
      t_now = target;
    }
    const double drift = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
    if (drift > 1e-6)
      throw NumericError("two-level integration lost trace (drift " + std::to_string(drift) +
                         ")");
    // Re-Hermitize to keep the invariant checks exact.
    Eigen::Matrix2cd sym = 0.5 * (rho + rho.adjoint());
    traj.rho.emplace_back(sym);
    traj.p_left.push_back(sym(0, 0).real());
  }
  return traj;
}

DensityMatrix lift_two_level(const SquidSpectrum& spectrum, const CMatrix& rho2) {
  if (rho2.rows() != 2 || rho2.cols() != 2) throw ShapeError("two-level state must be 2x2");
  const CVector& l = spectrum.l_state.amplitudes();
  const CVector& r = spectrum.r_state.amplitudes();
  CMatrix out = rho2(0, 0) * (l * l.adjoint()) + rho2(0, 1) * (l * r.adjoint()) +
                rho2(1, 0) * (r * l.adjoint()) + rho2(1, 1) * (r * r.adjoint());
  out = 0.5 * (out + out.adjoint().eval());
  return DensityMatrix(std::move(out));
}

std::vector<WignerGrid> wigner_snapshots(const SquidSpectrum& spectrum,
                                         const TwoLevelTrajectory& trajectory,
                                         const WignerSpec& spec) {
  std::vector<WignerGrid> out;
  out.reserve(trajectory.rho.size());
  for (const auto& rho2 : trajectory.rho)
    out.push_back(wigner(lift_two_level(spectrum, rho2), spectrum.params.grid, spec));
  return out;
}

WignerCatMetrics analyze_cat_wigner(const WignerGrid& grid, double well_l, double well_r) {
  if (!(well_l < well_r)) throw std::invalid_argument("well positions must be ordered");
  WignerCatMetrics m;
  const double cell_w = (grid.x_max - grid.x_min) / grid.nx;
  auto x_of = [&](int j) { return grid.x_min + j * cell_w; };
  const double window = 0.25 * (well_r - well_l);

  double best_l = -std::numeric_limits<double>::infinity();
  double best_r = best_l;
  for (int j = 0; j < grid.nx; ++j) {
    const double peak = grid.values.row(j).maxCoeff();
    if (std::abs(x_of(j) - well_l) <= window && peak > best_l) {
      best_l = peak;
      m.left_peak_x = x_of(j);
    }
    if (std::abs(x_of(j) - well_r) <= window && peak > best_r) {
      best_r = peak;
      m.right_peak_x = x_of(j);
    }
  }
  m.peak_value = std::max(best_l, best_r);

  const double mid = 0.5 * (well_l + well_r);
  double amp = 0.0;
  for (int j = 0; j < grid.nx; ++j) {
    if (std::abs(x_of(j) - mid) <= 0.5 * window)
      amp = std::max(amp, grid.values.row(j).cwiseAbs().maxCoeff());
  }
  m.interference_amplitude = amp;
  m.min_value = grid.min_value();
  return m;
}

}  // namespace decosim::squid
