#pragma once

#include <cstddef>
#include <vector>

#include "decosim/state.hpp"
#include "decosim/types.hpp"

namespace decosim {

/// Hard cap on composite dimensions. All models here fit in a few
/// thousand dimensions; the cap guards against runaway tensor products.
inline constexpr Index kMaxTensorDim = Index(1) << 20;

/// Kronecker product. Basis ordering is a-major throughout the library:
/// composite index = i_a * dim(b) + i_b.
StateVector tensor(const StateVector& a, const StateVector& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Trace out all factors except `keep`. `dims` lists the factor dimensions
/// in a-major order and must multiply to dim(rho).
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<Index>& dims,
                            std::size_t keep);

/// Keep an arbitrary (sorted, duplicate-free) subset of factors, tracing
/// out the rest. The kept factors stay in their original order.
DensityMatrix partial_trace_keep(const DensityMatrix& rho, const std::vector<Index>& dims,
                                 const std::vector<std::size_t>& keep);

}  // namespace decosim
