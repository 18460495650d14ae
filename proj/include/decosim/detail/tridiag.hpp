#pragma once

#include "decosim/types.hpp"

namespace decosim::detail {

struct TridiagEigenResult {
  RVector eigenvalues;   // ascending
  RMatrix eigenvectors;  // n x k, unit Euclidean norm, deterministic sign
};

/// Lowest k eigenpairs of the symmetric tridiagonal matrix with the given
/// diagonal and subdiagonal, via Sturm-sequence bisection plus inverse
/// iteration (with reorthogonalization, so near-degenerate tunneling
/// doublets resolve cleanly). Throws NumericError on non-convergence.
TridiagEigenResult lowest_eigenpairs(const RVector& diag, const RVector& offdiag, int k);

}  // namespace decosim::detail
