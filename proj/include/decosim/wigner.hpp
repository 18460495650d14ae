#pragma once

#include <vector>

#include "decosim/grid.hpp"
#include "decosim/state.hpp"
#include "decosim/types.hpp"

namespace decosim {

/// Discretized Wigner function W(x, p) on a rectangular phase-space grid.
/// `values(j, k)` is W at the j-th x cell and k-th p cell; cells have
/// width (x_max - x_min)/nx and (p_max - p_min)/np.
struct WignerGrid {
  double x_min = 0.0, x_max = 1.0;
  double p_min = 0.0, p_max = 1.0;
  int nx = 0, np = 0;
  RMatrix values;

  double cell_area() const {
    return (x_max - x_min) / nx * (p_max - p_min) / np;
  }
  /// Riemann sum of W times the cell area; 1 for a unit-trace state.
  double sum_times_area() const { return values.sum() * cell_area(); }
  double min_value() const { return values.minCoeff(); }
  double max_value() const { return values.maxCoeff(); }
};

/// Output resolution request. Zeros pick defaults that keep the discrete
/// transform alias-free: nx = n/4 position samples and np = n/2 momentum
/// cells spanning one full period pi/dx of the discrete kernel.
struct WignerSpec {
  int nx = 0;
  int np = 0;
};

/// Wigner transform of a density matrix given in a uniform 1-D
/// position-like basis: W(x,p) = (1/pi) * sum_y rho(x+y, x-y) e^{-2ipy}.
/// The y sum runs over all grid pairs; momentum cells are chosen
/// conjugate to the grid so that summing W over p recovers the diagonal
/// of rho exactly.
WignerGrid wigner(const DensityMatrix& rho, const UniformGrid& grid, const WignerSpec& spec = {});

/// Same, for a basis given as explicit positions. Throws
/// UnsupportedBasisError if the spacing is not uniform to 1e-9 relative.
WignerGrid wigner(const DensityMatrix& rho, const std::vector<double>& positions,
                  const WignerSpec& spec = {});

}  // namespace decosim
