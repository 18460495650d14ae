#pragma once

#include "decosim/types.hpp"

namespace decosim {

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

/// Pure state over a declared finite basis. Amplitudes are not forced to
/// unit norm at construction; `normalized()` returns the unit-norm state.
class StateVector {
 public:
  /// Trivial dim-1 unit state, so aggregates holding states stay movable.
  StateVector() : amps_(CVector::Ones(1)) {}
  explicit StateVector(CVector amplitudes);

  static StateVector basis_state(Index dim, Index index);

  Index dim() const { return amps_.size(); }
  const CVector& amplitudes() const { return amps_; }
  Complex amplitude(Index i) const { return amps_(i); }

  double norm() const { return amps_.norm(); }
  StateVector normalized() const;

  /// ⟨this|other⟩
  Complex overlap(const StateVector& other) const;

 private:
  CVector amps_;
};

/// Density operator on a finite basis. Construction enforces Hermiticity
/// and unit trace; positivity is checked wherever eigenvalues are computed
/// (entropy) and via `min_eigenvalue` in tests.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix entries);

  static DensityMatrix pure(const StateVector& psi);

  Index dim() const { return entries_.rows(); }
  const CMatrix& entries() const { return entries_; }
  Complex entry(Index i, Index j) const { return entries_(i, j); }

  double trace_real() const { return entries_.trace().real(); }
  double purity() const;
  double min_eigenvalue() const;

 private:
  CMatrix entries_;
};

/// Hermitian operator (Hamiltonians, pseudospin components, projectors).
class HermitianOperator {
 public:
  explicit HermitianOperator(CMatrix entries);

  Index dim() const { return entries_.rows(); }
  const CMatrix& entries() const { return entries_; }

 private:
  CMatrix entries_;
};

CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

}  // namespace decosim
