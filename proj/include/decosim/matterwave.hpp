#pragma once

#include <functional>
#include <string>
#include <vector>

#include "decosim/state.hpp"
#include "decosim/types.hpp"

namespace decosim::matterwave {

struct BeamParams {
  double mass = 0.0;      // kg
  double velocity = 0.0;  // m/s
  double lambda_db() const;
};

/// h / (m v).
double de_broglie(double mass, double velocity);

/// d^2 / lambda, the grating self-imaging distance.
double talbot_length(double period, double lambda);

struct GratingStack {
  double period = 1e-6;        // d [m]
  double open_fraction = 0.5;  // f in (0, 1)
  double separation = 0.0;     // L [m]; callers usually set talbot_length(d, lambda)
  int n_slits = 16;            // simulation aperture, >= 16
};

/// Uncollimated-source stand-in: a uniform fan of mutually incoherent
/// plane waves. angular_spread <= 0 picks the default d/L.
struct IncoherenceModel {
  int n_angles = 32;
  double angular_spread = 0.0;  // rad, full width
};

struct FringeScan {
  std::vector<double> shifts;  // in [0, d)
  std::vector<double> counts;  // >= 0
  double visibility = 0.0;     // (max - min) / (max + min)
};

/// Scalar 1-D paraxial model: per fan angle, a unit plane wave passes the
/// binary second grating, Fresnel-propagates over the separation, and the
/// intensities are summed; the third grating masks the pattern at each
/// scan shift. Sampling is chosen internally to resolve lambda*L/d
/// features and to keep the propagation kernel alias-free
/// (ResolutionError when that would exceed the size cap).
FringeScan simulate_fringe_scan(const BeamParams& beam, const GratingStack& stack, int n_scan,
                                const IncoherenceModel& incoherence);

/// Geometric-shadow variant (straight rays, no propagation phase): the
/// classical Moire pattern, independent of the de Broglie wavelength.
FringeScan simulate_fringe_scan_ray(const GratingStack& stack, int n_scan,
                                    const IncoherenceModel& incoherence);

/// Dominant period of a scan over [0, d): d divided by the index of the
/// largest nonzero Fourier component (the scan is periodic in d by
/// construction, so the DFT over one period is exact).
double dominant_scan_period(const FringeScan& scan, double period);

double visibility_of(const std::vector<double>& counts);

struct GasEnvironment {
  double pressure = 0.0;     // Pa
  double temperature = 0.0;  // K
  double sigma_eff = 0.0;    // m^2, always user-supplied
};

/// p0 = k_B T / (2 L sigma_eff).
double decoherence_pressure(const GasEnvironment& env, double separation);

/// V0 e^{-p/p0}.
double visibility_with_gas(double v0, double pressure, double p0);

/// Entrywise which-path damping: rho(x, x') *= overlap(x, x'), where
/// overlap is the environment-state inner product for paths x vs x'
/// (|overlap| <= 1, overlap(x, x) = 1). Orthogonal environment states
/// (a Kronecker delta) diagonalize rho exactly.
DensityMatrix which_path_dephase(const DensityMatrix& rho, const std::vector<double>& positions,
                                 const std::function<Complex(double, double)>& overlap);

/// Scaling model for the maximum tolerable pressure at a heavier mass:
/// at fixed velocity lambda ~ 1/m, the grating period shrinks as
/// sqrt(lambda), one Talbot length is then mass-independent, and only the
/// cross-section model changes p0. The assumptions are echoed in the
/// result so downstream records stay honest about the model.
struct ExtrapolationResult {
  double p0 = 0.0;
  double target_mass = 0.0;
  double reference_mass = 0.0;
  std::vector<std::string> assumptions;
};
ExtrapolationResult extrapolate_required_pressure(
    double target_mass, double reference_mass, double reference_p0,
    const std::function<double(double)>& sigma_eff_of_mass = {});

}  // namespace decosim::matterwave
