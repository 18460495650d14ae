#include "decosim/state.hpp"

#include <stdexcept>
#include <string>

#include "decosim/errors.hpp"

namespace decosim {

StateVector::StateVector(CVector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() < 1) throw std::invalid_argument("state vector needs dim >= 1");
}

StateVector StateVector::basis_state(Index dim, Index index) {
  if (index < 0 || index >= dim) throw std::invalid_argument("basis index out of range");
  CVector v = CVector::Zero(dim);
  v(index) = 1.0;
  return StateVector(std::move(v));
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw NumericError("cannot normalize the zero vector");
  return StateVector(amps_ / n);
}

Complex StateVector::overlap(const StateVector& other) const {
  if (other.dim() != dim()) throw ShapeError("overlap of states with different dims");
  return amps_.dot(other.amps_);  // Eigen's dot conjugates the left argument
}

DensityMatrix::DensityMatrix(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1)
    throw ShapeError("density matrix must be square, dim >= 1");
  const double herm = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermitianTol)
    throw std::invalid_argument("density matrix not Hermitian (deviation " +
                                std::to_string(herm) + ")");
  const Complex tr = entries_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTol)
    throw std::invalid_argument("density matrix trace != 1 (got " +
                                std::to_string(tr.real()) + ")");
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  const StateVector unit = psi.normalized();
  CMatrix rho = unit.amplitudes() * unit.amplitudes().adjoint();
  // Symmetrize away the last bits of rounding so the invariant check is exact.
  rho = 0.5 * (rho + rho.adjoint().eval());
  return DensityMatrix(std::move(rho));
}

double DensityMatrix::purity() const { return (entries_ * entries_).trace().real(); }

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(entries_, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("eigensolve failed");
  return es.eigenvalues().minCoeff();
}

HermitianOperator::HermitianOperator(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1)
    throw ShapeError("operator must be square, dim >= 1");
  const double herm = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermitianTol)
    throw std::invalid_argument("operator not Hermitian (deviation " +
                                std::to_string(herm) + ")");
}

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace decosim
