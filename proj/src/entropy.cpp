#include "decosim/entropy.hpp"

#include <cmath>
#include <string>

#include "decosim/errors.hpp"

namespace decosim {

double von_neumann_entropy(const DensityMatrix& rho, EntropyBase base) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.entries(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("entropy eigensolve failed");

  double h = 0.0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    double p = es.eigenvalues()(i);
    if (p < -kPsdTol)
      throw NumericError("density matrix has eigenvalue " + std::to_string(p) +
                         " below -1e-10; not positive semidefinite");
    if (p < 1e-14) continue;
    h -= p * std::log(p);
  }
  return base == EntropyBase::bits ? h / std::log(2.0) : h;
}

}  // namespace decosim
