#include "decosim/bec.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "decosim/constants.hpp"
#include "decosim/errors.hpp"

namespace decosim::bec {

void TwoModeState::validate() const {
  if (total_atoms < 1) throw std::invalid_argument("need at least one atom");
  if (total_atoms > kMaxExplicitAtoms)
    throw SizeError("explicit two-mode states are capped at N = " +
                    std::to_string(kMaxExplicitAtoms));
  if (amplitudes.size() != total_atoms + 1)
    throw ShapeError("two-mode state needs N+1 amplitudes");
  if (std::abs(amplitudes.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("two-mode state must be normalized");
}

TwoModeState make_cat(int total_atoms, int n_first, double phi) {
  if (total_atoms < 1) throw std::invalid_argument("need at least one atom");
  if (total_atoms > kMaxExplicitAtoms)
    throw SizeError("explicit two-mode states are capped at N = " +
                    std::to_string(kMaxExplicitAtoms));
  if (n_first < 0 || 2 * n_first > total_atoms)
    throw std::invalid_argument("canonical ordering requires 0 <= n <= N/2");

  TwoModeState state;
  state.total_atoms = total_atoms;
  state.amplitudes = CVector::Zero(total_atoms + 1);
  if (2 * n_first == total_atoms) {
    state.amplitudes(n_first) = 1.0;  // both terms are the same basis state
  } else {
    const double a = 1.0 / std::numbers::sqrt2;
    state.amplitudes(n_first) = a;
    state.amplitudes(total_atoms - n_first) = std::polar(a, phi);
  }
  return state;
}

DensityMatrix density_matrix(const TwoModeState& state) {
  state.validate();
  return DensityMatrix::pure(StateVector(state.amplitudes));
}

DensityMatrix phase_damp(const DensityMatrix& rho, const PhaseDampingParams& params, double t) {
  if (params.kappa < 0.0) throw std::invalid_argument("kappa must be >= 0");
  if (t < 0.0) throw std::invalid_argument("t must be >= 0");
  const Index n = rho.dim();
  CMatrix out(n, n);
  for (Index m = 0; m < n; ++m) {
    for (Index k = 0; k < n; ++k) {
      const double diff = double(m - k);
      const double decay = std::exp(-diff * diff * params.kappa * t);
      out(m, k) = rho.entry(m, k) * std::polar(decay, -params.omega * diff * t);
    }
  }
  return DensityMatrix(std::move(out));
}

DensityMatrix phase_damp(const TwoModeState& state, const PhaseDampingParams& params, double t) {
  return phase_damp(density_matrix(state), params, t);
}

double cat_coherence_magnitude(int total_atoms, double kappa, double t) {
  if (total_atoms < 1) throw std::invalid_argument("need at least one atom");
  if (kappa < 0.0 || t < 0.0) throw std::invalid_argument("kappa and t must be >= 0");
  const double n = double(total_atoms);
  return 0.5 * std::exp(-n * n * kappa * t);
}

LossResult annihilate(const TwoModeState& state, int mode) {
  state.validate();
  if (mode != 1 && mode != 2) throw std::invalid_argument("mode must be 1 or 2");
  const int n_total = state.total_atoms;

  LossResult out;
  out.state.total_atoms = n_total - 1;
  CVector image = CVector::Zero(n_total);  // basis |n, N-1-n>, n = 0..N-1
  for (int n = 0; n <= n_total; ++n) {
    const Complex c = state.amplitudes(n);
    if (c == Complex(0.0, 0.0)) continue;
    if (mode == 1) {
      if (n >= 1) image(n - 1) += std::sqrt(double(n)) * c;
    } else {
      const int n2 = n_total - n;  // second-mode occupation
      if (n2 >= 1) image(n) += std::sqrt(double(n2)) * c;
    }
  }
  out.norm = image.norm();
  if (out.norm == 0.0) {
    out.annihilated_to_zero = true;
    if (n_total - 1 >= 0) out.state.amplitudes = CVector::Zero(n_total);
    return out;
  }
  out.state.amplitudes = image / out.norm;
  return out;
}

double LossCalibration::predict_tau(double scattering_length, double n_noncondensed,
                                    double n_atoms) const {
  if (scattering_length <= 0.0 || n_noncondensed <= 0.0 || n_atoms <= 0.0)
    throw std::invalid_argument("prediction inputs must be > 0");
  return 1.0 / (c * scattering_length * scattering_length * n_noncondensed * n_atoms * n_atoms);
}

LossCalibration calibrate_tau(const LossReference& reference) {
  if (reference.scattering_length <= 0.0 || reference.n_noncondensed <= 0.0 ||
      reference.n_atoms <= 0.0 || reference.tau_d <= 0.0)
    throw std::invalid_argument("all reference values must be > 0");
  LossCalibration cal;
  cal.reference = reference;
  cal.c = 1.0 / (reference.tau_d * reference.scattering_length * reference.scattering_length *
                 reference.n_noncondensed * reference.n_atoms * reference.n_atoms);
  return cal;
}

double CondensationCheck::thermal_wavelength() const {
  if (mass <= 0.0 || temperature <= 0.0)
    throw std::invalid_argument("mass and temperature must be > 0");
  return std::sqrt(2.0 * std::numbers::pi * constants.hbar * constants.hbar /
                   (mass * constants.k_B * temperature));
}

double CondensationCheck::interparticle() const {
  if (density <= 0.0) throw std::invalid_argument("density must be > 0");
  return std::pow(density, -1.0 / 3.0);
}

CondensationRegime condensation_regime(const CondensationCheck& check) {
  CondensationRegime out;
  out.ratio = check.thermal_wavelength() / check.interparticle();
  out.condensed_hint = out.ratio > 1.0;
  return out;
}

}  // namespace decosim::bec
