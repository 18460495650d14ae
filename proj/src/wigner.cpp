#include "decosim/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "decosim/errors.hpp"

namespace decosim {

WignerGrid wigner(const DensityMatrix& rho, const UniformGrid& grid, const WignerSpec& spec) {
  grid.validate();
  const int n = grid.n;
  if (rho.dim() != n)
    throw ShapeError("rho dim " + std::to_string(rho.dim()) + " does not match grid with " +
                     std::to_string(n) + " points");

  const int nx_req = spec.nx > 0 ? spec.nx : std::max(2, n / 4);
  const int np = spec.np > 0 ? spec.np : std::max(2, n / 2);
  const int stride = std::max(1, n / nx_req);
  const int nx = (n + stride - 1) / stride;

  const double dx = grid.spacing();
  const double dp = std::numbers::pi / (dx * np);
  const double p_min = -0.5 * std::numbers::pi / dx;

  WignerGrid out;
  out.nx = nx;
  out.np = np;
  out.x_min = grid.min;
  out.x_max = grid.min + nx * stride * dx;
  out.p_min = p_min;
  out.p_max = p_min + np * dp;
  out.values.resize(nx, np);

  // Per momentum cell, the y sum is accumulated with a phasor recurrence:
  // e^{-2ip(y+dx)} = e^{-2ipy} * step.
  std::vector<Complex> step(np);
  for (int k = 0; k < np; ++k)
    step[k] = std::polar(1.0, -2.0 * (p_min + k * dp) * dx);

  const CMatrix& m = rho.entries();
  const double inv_pi = 1.0 / std::numbers::pi;
  for (int j = 0; j < nx; ++j) {
    const int i = j * stride;
    const int ymax = std::min(i, n - 1 - i);
    for (int k = 0; k < np; ++k) {
      Complex rot(1.0, 0.0);
      double acc = m(i, i).real();
      for (int y = 1; y <= ymax; ++y) {
        rot *= step[k];
        acc += 2.0 * (m(i + y, i - y) * rot).real();
      }
      out.values(j, k) = inv_pi * acc;
    }
  }
  return out;
}

WignerGrid wigner(const DensityMatrix& rho, const std::vector<double>& positions,
                  const WignerSpec& spec) {
  if (positions.size() < 2) throw UnsupportedBasisError("need at least 2 basis positions");
  const double h = positions[1] - positions[0];
  if (!(h > 0)) throw UnsupportedBasisError("basis positions must be increasing");
  for (std::size_t i = 1; i + 1 < positions.size(); ++i) {
    const double hi = positions[i + 1] - positions[i];
    if (std::abs(hi - h) > 1e-9 * std::abs(h))
      throw UnsupportedBasisError("basis positions are not uniformly spaced at index " +
                                  std::to_string(i));
  }
  UniformGrid grid{positions.front(), positions.back(), static_cast<int>(positions.size())};
  return wigner(rho, grid, spec);
}

}  // namespace decosim
