#pragma once

#include "decosim/state.hpp"

namespace decosim {

enum class EntropyBase { bits, nats };

/// Von Neumann entropy -Tr(rho log rho). Eigenvalues in [-1e-10, 0) are
/// clamped to zero (numerical PSD drift); anything more negative is an
/// error. Eigenvalues below 1e-14 contribute nothing.
double von_neumann_entropy(const DensityMatrix& rho, EntropyBase base = EntropyBase::bits);

}  // namespace decosim
