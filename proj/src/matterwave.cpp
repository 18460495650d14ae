#include "decosim/matterwave.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "decosim/constants.hpp"
#include "decosim/detail/fft.hpp"
#include "decosim/errors.hpp"
#include "decosim/parallel.hpp"

namespace decosim::matterwave {

namespace {

constexpr std::size_t kMaxSamples = std::size_t(1) << 20;

// Binary transmission, slits centered mid-period.
bool grating_open(double x, double period, double open_fraction) {
  double frac = x / period - std::floor(x / period);
  return std::abs(frac - 0.5) < 0.5 * open_fraction;
}

struct ScanGeometry {
  std::size_t n_samples;
  double dx;
  double domain_width;
};

ScanGeometry choose_sampling(const GratingStack& stack, double lambda) {
  const double d = stack.period;
  const double l_sep = stack.separation;
  // Resolve the transverse Fresnel feature lambda*L/d with >= 8 samples,
  // and never sample a period with fewer than 32.
  const double feature = lambda * l_sep / d;
  std::size_t per_period = 32;
  if (feature < d)
    per_period =
        std::max<std::size_t>(32, detail::next_power_of_two(
                                      static_cast<std::size_t>(std::ceil(8.0 * d / feature))));
  // Pad the aperture so the quadratic kernel phase is sampled below the
  // Nyquist rate: need n_samples <= (M d)^2 / (lambda L).
  std::size_t periods = detail::next_power_of_two(4 * static_cast<std::size_t>(stack.n_slits));
  while (double(periods) * d * d < double(per_period) * lambda * l_sep &&
         periods * per_period <= kMaxSamples)
    periods <<= 1;
  const std::size_t n = periods * per_period;
  if (n > kMaxSamples || double(periods) * d * d < double(per_period) * lambda * l_sep)
    throw ResolutionError(
        "cannot resolve lambda*L/d = " + std::to_string(feature) +
        " m features within the sample cap; reduce the separation or the aperture");
  return {n, d / double(per_period), double(periods) * d};
}

std::vector<double> scan_shifts(double period, int n_scan) {
  std::vector<double> shifts(n_scan);
  for (int j = 0; j < n_scan; ++j) shifts[j] = period * double(j) / double(n_scan);
  return shifts;
}

FringeScan mask_and_count(const std::vector<double>& intensity, const std::vector<double>& xs,
                          const GratingStack& stack, int n_scan, double dx) {
  const double window = 0.25 * stack.n_slits * stack.period;
  FringeScan scan;
  scan.shifts = scan_shifts(stack.period, n_scan);
  scan.counts.resize(n_scan, 0.0);
  for (int j = 0; j < n_scan; ++j) {
    double c = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (std::abs(xs[i]) > window) continue;
      if (grating_open(xs[i] - scan.shifts[j], stack.period, stack.open_fraction))
        c += intensity[i] * dx;
    }
    scan.counts[j] = c;
  }
  scan.visibility = visibility_of(scan.counts);
  return scan;
}

std::vector<double> fan_angles(const IncoherenceModel& inc, double default_spread) {
  const double spread = inc.angular_spread > 0.0 ? inc.angular_spread : default_spread;
  std::vector<double> angles(inc.n_angles);
  for (int j = 0; j < inc.n_angles; ++j)
    angles[j] = spread * ((j + 0.5) / double(inc.n_angles) - 0.5);
  return angles;
}

void validate_stack(const GratingStack& stack, int n_scan, const IncoherenceModel& inc) {
  if (stack.period <= 0.0) throw std::invalid_argument("grating period must be > 0");
  if (stack.separation <= 0.0) throw std::invalid_argument("grating separation must be > 0");
  if (!(stack.open_fraction > 0.0 && stack.open_fraction < 1.0))
    throw std::invalid_argument("open_fraction must lie in (0, 1)");
  if (stack.n_slits < 16) throw std::invalid_argument("n_slits must be >= 16");
  if (n_scan < 4) throw std::invalid_argument("n_scan must be >= 4");
  if (inc.n_angles < 1) throw std::invalid_argument("n_angles must be >= 1");
}

}  // namespace

double BeamParams::lambda_db() const { return de_broglie(mass, velocity); }

double de_broglie(double mass, double velocity) {
  if (mass <= 0.0 || velocity <= 0.0)
    throw std::invalid_argument("mass and velocity must be > 0");
  return constants.h / (mass * velocity);
}

double talbot_length(double period, double lambda) {
  if (period <= 0.0 || lambda <= 0.0)
    throw std::invalid_argument("period and wavelength must be > 0");
  return period * period / lambda;
}

FringeScan simulate_fringe_scan(const BeamParams& beam, const GratingStack& stack, int n_scan,
                                const IncoherenceModel& incoherence) {
  validate_stack(stack, n_scan, incoherence);
  const double lambda = beam.lambda_db();
  const ScanGeometry geom = choose_sampling(stack, lambda);
  const std::size_t n = geom.n_samples;
  const double aperture = 0.5 * stack.n_slits * stack.period;

  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i)
    xs[i] = (double(i) - 0.5 * double(n)) * geom.dx;

  // Paraxial transfer function exp(-i pi lambda L f^2) on FFT frequencies.
  std::vector<double> kernel_phase(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double m = (i <= n / 2) ? double(i) : double(i) - double(n);
    const double f = m / geom.domain_width;
    kernel_phase[i] = -std::numbers::pi * lambda * stack.separation * f * f;
  }

  const std::vector<double> angles =
      fan_angles(incoherence, stack.period / stack.separation);
  std::vector<std::vector<double>> per_angle(angles.size());

  parallel_for(angles.size(), [&](std::size_t a) {
    const double kx = 2.0 * std::numbers::pi * angles[a] / lambda;
    std::vector<Complex> field(n, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(xs[i]) <= aperture &&
          grating_open(xs[i], stack.period, stack.open_fraction))
        field[i] = std::polar(1.0, kx * xs[i]);
    }
    detail::fft_inplace(field, false);
    for (std::size_t i = 0; i < n; ++i) field[i] *= std::polar(1.0, kernel_phase[i]);
    detail::fft_inplace(field, true);
    std::vector<double> intensity(n);
    for (std::size_t i = 0; i < n; ++i) intensity[i] = std::norm(field[i]);
    per_angle[a] = std::move(intensity);
  });

  std::vector<double> total(n, 0.0);
  for (const auto& row : per_angle)  // fixed order keeps the sum deterministic
    for (std::size_t i = 0; i < n; ++i) total[i] += row[i];

  return mask_and_count(total, xs, stack, n_scan, geom.dx);
}

FringeScan simulate_fringe_scan_ray(const GratingStack& stack, int n_scan,
                                    const IncoherenceModel& incoherence) {
  validate_stack(stack, n_scan, incoherence);
  const std::size_t per_period = 64;
  const std::size_t periods = detail::next_power_of_two(4 * std::size_t(stack.n_slits));
  const std::size_t n = periods * per_period;
  const double dx = stack.period / double(per_period);
  const double aperture = 0.5 * stack.n_slits * stack.period;

  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = (double(i) - 0.5 * double(n)) * dx;

  const std::vector<double> angles =
      fan_angles(incoherence, stack.period / stack.separation);
  std::vector<double> total(n, 0.0);
  for (double theta : angles) {
    const double shift = theta * stack.separation;
    for (std::size_t i = 0; i < n; ++i) {
      const double source = xs[i] - shift;
      if (std::abs(source) <= aperture &&
          grating_open(source, stack.period, stack.open_fraction))
        total[i] += 1.0;
    }
  }
  return mask_and_count(total, xs, stack, n_scan, dx);
}

double visibility_of(const std::vector<double>& counts) {
  if (counts.empty()) throw std::invalid_argument("empty scan");
  const auto [mn, mx] = std::minmax_element(counts.begin(), counts.end());
  const double lo = *mn, hi = *mx;
  if (hi + lo <= 0.0) return 0.0;
  return (hi - lo) / (hi + lo);
}

double dominant_scan_period(const FringeScan& scan, double period) {
  const std::size_t n = scan.counts.size();
  if (n < 4) throw std::invalid_argument("scan too short for a period estimate");
  double best = 0.0;
  std::size_t best_k = 1;
  for (std::size_t k = 1; k <= n / 2; ++k) {
    Complex acc(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j)
      acc += scan.counts[j] * std::polar(1.0, -2.0 * std::numbers::pi * double(k * j) / double(n));
    if (std::abs(acc) > best) {
      best = std::abs(acc);
      best_k = k;
    }
  }
  return period / double(best_k);
}

double decoherence_pressure(const GasEnvironment& env, double separation) {
  if (env.temperature <= 0.0 || env.sigma_eff <= 0.0 || separation <= 0.0)
    throw std::invalid_argument("temperature, sigma_eff and separation must be > 0");
  return constants.k_B * env.temperature / (2.0 * separation * env.sigma_eff);
}

double visibility_with_gas(double v0, double pressure, double p0) {
  if (v0 < 0.0 || v0 > 1.0) throw std::invalid_argument("V0 must lie in [0, 1]");
  if (pressure < 0.0 || p0 <= 0.0)
    throw std::invalid_argument("need pressure >= 0 and p0 > 0");
  return v0 * std::exp(-pressure / p0);
}

DensityMatrix which_path_dephase(const DensityMatrix& rho, const std::vector<double>& positions,
                                 const std::function<Complex(double, double)>& overlap) {
  if (static_cast<Index>(positions.size()) != rho.dim())
    throw ShapeError("positions must label every basis state of rho");
  const Index n = rho.dim();
  CMatrix out(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const Complex w = overlap(positions[i], positions[j]);
      if (std::abs(w) > 1.0 + 1e-12)
        throw std::invalid_argument("overlap magnitude exceeds 1 at (" +
                                    std::to_string(positions[i]) + ", " +
                                    std::to_string(positions[j]) + ")");
      if (i == j && std::abs(w - Complex(1.0, 0.0)) > 1e-12)
        throw std::invalid_argument("overlap(x, x) must equal 1");
      out(i, j) = rho.entry(i, j) * w;
    }
  }
  return DensityMatrix(std::move(out));
}

ExtrapolationResult extrapolate_required_pressure(
    double target_mass, double reference_mass, double reference_p0,
    const std::function<double(double)>& sigma_eff_of_mass) {
  if (target_mass <= 0.0 || reference_mass <= 0.0 || reference_p0 <= 0.0)
    throw std::invalid_argument("masses and reference p0 must be > 0");

  ExtrapolationResult out;
  out.target_mass = target_mass;
  out.reference_mass = reference_mass;
  out.assumptions = {
      "fixed velocity: lambda scales as 1/m",
      "grating period scales as sqrt(lambda), i.e. d ~ 1/sqrt(m)",
      "separation held at one Talbot length d^2/lambda, mass-independent at fixed v",
  };
  double ratio;
  if (sigma_eff_of_mass) {
    ratio = sigma_eff_of_mass(reference_mass) / sigma_eff_of_mass(target_mass);
    out.assumptions.push_back("sigma_eff: user-supplied model of mass");
  } else {
    ratio = std::pow(reference_mass / target_mass, 2.0 / 3.0);
    out.assumptions.push_back("sigma_eff: geometric cross section ~ m^(2/3) (default)");
  }
  out.p0 = reference_p0 * ratio;
  return out;
}

}  // namespace decosim::matterwave
