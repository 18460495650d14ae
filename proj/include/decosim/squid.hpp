#pragma once

#include <vector>

#include "decosim/grid.hpp"
#include "decosim/state.hpp"
#include "decosim/types.hpp"
#include "decosim/wigner.hpp"

namespace decosim::squid {

/// Double-well problem in reduced units: hbar = 1, flux in units of the
/// flux quantum, energies in units of Phi_0^2/L. The potential is
///   U(phi) = (phi - phi_ext)^2 / 2 - (i_c / 2 pi) cos(2 pi phi)
/// and the kinetic term carries 1/(2 C).
struct SquidParams {
  double capacitance = 100.0;      // effective mass C
  double critical_current = 2.0;   // i_c; the loop parameter beta_L is 2 pi i_c
  double external_flux = 0.5;      // phi_ext in units of Phi_0
  UniformGrid grid{-1.0, 2.0, 1024};

  double beta_l() const;
  /// Checks ranges and that U actually has two local minima on the grid.
  void validate() const;
};

/// Converts device values (capacitance in F, loop inductance in H,
/// critical current in A) to the reduced parameters above, and reports
/// the energy unit Phi_0^2/L in joules for converting results back.
struct ReducedUnits {
  SquidParams params;
  double energy_unit_joule;
  double time_unit_second;
};
ReducedUnits params_from_si(double capacitance_farad, double inductance_henry,
                            double critical_current_ampere, double external_flux = 0.5);

double potential(const SquidParams& params, double phi);

struct SquidSpectrum {
  SquidParams params;
  std::vector<double> energies;  // ascending
  RMatrix wavefunctions;         // n_points x n_levels, sum psi^2 * h = 1
  double delta_e = 0.0;          // E_1 - E_0
  StateVector l_state;           // (psi_s + psi_a)/sqrt(2), mean flux below phi_ext
  StateVector r_state;           // (psi_s - psi_a)/sqrt(2) counterpart
  double mean_flux_l = 0.0;
  double mean_flux_r = 0.0;
  double barrier_height = 0.0;   // local max of U between the wells
  double edge_weight = 0.0;      // max over levels of psi^2 weight in the outer 10%

  int n_points() const { return params.grid.n; }
  int n_levels() const { return static_cast<int>(energies.size()); }
};

/// Discretizes -(1/2C) d^2/dphi^2 + U(phi) with the three-point
/// finite-difference Laplacian and Dirichlet boundaries, and returns the
/// n_levels lowest eigenpairs. Requires the ground doublet to lie below
/// the barrier (ModelRegimeError otherwise).
SquidSpectrum solve_spectrum(const SquidParams& params, int n_levels);

/// P_L(t) = cos^2(delta_E t / 2), the closed-form return probability for
/// a state starting in one well.
double tunneling_probability(double delta_e, double t);

/// Spectral propagation psi(t) = sum_k e^{-i E_k t} <psi_k|psi(0)> psi_k
/// over the retained modes. Throws TruncationError if more than 1% of the
/// initial weight lies outside them.
std::vector<StateVector> evolve_full(const SquidSpectrum& spectrum, const StateVector& initial,
                                     const std::vector<double>& times);

/// Markovian pure dephasing in the flux basis; the bath couples through
/// the pseudospin sigma_z = |L><L| - |R><R|, so the flux states are the
/// stable pointer states.
enum class DephasingBasis { flux };

struct DephasingModel {
  double gamma = 0.0;  // pure-dephasing rate, >= 0
  DephasingBasis basis = DephasingBasis::flux;
};

struct TwoLevelTrajectory {
  std::vector<double> times;
  std::vector<CMatrix> rho;     // 2x2 in the {|L>, |R>} basis
  std::vector<double> p_left;   // <L|rho|L>
};

/// Integrates d rho/dt = -i[H2, rho] + gamma (sz rho sz - rho) with
/// H2 = -(delta_E/2) sx, fixed-step RK4, step <= 1/(50 max(delta_E, gamma)).
TwoLevelTrajectory evolve_two_level(double delta_e, const DephasingModel& model,
                                    const CMatrix& initial, const std::vector<double>& times);

/// Lifts a 2x2 density matrix in {|L>, |R>} onto the flux grid.
DensityMatrix lift_two_level(const SquidSpectrum& spectrum, const CMatrix& rho2);

std::vector<WignerGrid> wigner_snapshots(const SquidSpectrum& spectrum,
                                         const TwoLevelTrajectory& trajectory,
                                         const WignerSpec& spec = {});

/// Peak and interference-fringe measurements for a two-hump Wigner
/// function. The humps are located near the given well positions (search
/// window: a quarter of the well separation around each); the
/// interference amplitude is max |W| over the middle quarter between the
/// wells, where the cat fringes live.
struct WignerCatMetrics {
  double left_peak_x = 0.0;
  double right_peak_x = 0.0;
  double peak_value = 0.0;
  double interference_amplitude = 0.0;
  double min_value = 0.0;
};
WignerCatMetrics analyze_cat_wigner(const WignerGrid& grid, double well_l, double well_r);

}  // namespace decosim::squid
