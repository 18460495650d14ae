#pragma once

#include "decosim/state.hpp"
#include "decosim/types.hpp"

namespace decosim::bec {

/// Explicit Fock-space storage is capped; scaling statements beyond this
/// use the closed forms below.
inline constexpr int kMaxExplicitAtoms = 10000;

/// Two-mode state over the basis {|n, N-n> : n = 0..N}; the amplitude
/// index n is the first-mode occupation.
struct TwoModeState {
  int total_atoms = 0;
  CVector amplitudes;  // dim total_atoms + 1, unit norm

  void validate() const;
};

/// (|n, N-n> + e^{i phi} |N-n, n>)/sqrt(2); for n = N/2 the two terms
/// coincide and the single normalized basis state is returned.
TwoModeState make_cat(int total_atoms, int n_first, double phi);

DensityMatrix density_matrix(const TwoModeState& state);

struct PhaseDampingParams {
  double kappa = 0.0;  // 1/s, >= 0
  double omega = 0.0;  // rad/s mode-frequency difference
};

/// Exact phase-damping channel in the number basis:
/// <m|rho(t)|n> = e^{-(m-n)^2 kappa t} e^{-i omega (m-n) t} <m|rho(0)|n>.
DensityMatrix phase_damp(const DensityMatrix& rho, const PhaseDampingParams& params, double t);
DensityMatrix phase_damp(const TwoModeState& state, const PhaseDampingParams& params, double t);

/// Off-diagonal magnitude of the maximal cat after phase damping,
/// (1/2) e^{-N^2 kappa t}; closed form, valid for any N.
double cat_coherence_magnitude(int total_atoms, double kappa, double t);

struct LossResult {
  TwoModeState state;              // normalized post-loss state on N-1 atoms
  double norm = 0.0;               // norm of the unnormalized image
  bool annihilated_to_zero = false;
};

/// Applies the destruction operator of the chosen mode (1 or 2), with
/// a|n> = sqrt(n)|n-1>. A single loss event from the maximal cat leaves
/// sqrt(N/2)|N-1, 0>: the coherence is gone in one shot.
LossResult annihilate(const TwoModeState& state, int mode);

struct LossReference {
  double scattering_length = 0.0;  // a [m]
  double n_noncondensed = 0.0;     // thermal-cloud size N_nc
  double n_atoms = 0.0;            // condensate size N
  double tau_d = 0.0;              // decoherence time at the reference point [s]
};

/// tau_d^{-1} = c a^2 N_nc N^2 with c calibrated from one reference point;
/// the proportionality constant is never hard-coded.
struct LossCalibration {
  double c = 0.0;
  LossReference reference;

  double predict_tau(double scattering_length, double n_noncondensed, double n_atoms) const;
};
LossCalibration calibrate_tau(const LossReference& reference);

struct CondensationCheck {
  double mass = 0.0;         // kg
  double temperature = 0.0;  // K
  double density = 0.0;      // m^-3

  /// (2 pi hbar^2 / (m k_B T))^{1/2}
  double thermal_wavelength() const;
  double interparticle() const;  // density^{-1/3}
};

struct CondensationRegime {
  double ratio = 0.0;          // thermal wavelength / interparticle spacing
  bool condensed_hint = false; // heuristic flag: ratio > 1
};
CondensationRegime condensation_regime(const CondensationCheck& check);

}  // namespace decosim::bec
