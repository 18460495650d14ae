#include "decosim/detail/tridiag.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "decosim/errors.hpp"

namespace decosim::detail {

namespace {

// Number of eigenvalues strictly below x (Sturm sequence via LDL^T).
int sturm_count(const RVector& d, const RVector& e, double x, double pivmin) {
  const Index n = d.size();
  int count = 0;
  double q = d(0) - x;
  if (q < 0) ++count;
  for (Index i = 1; i < n; ++i) {
    if (std::abs(q) < pivmin) q = -pivmin;
    q = d(i) - x - e(i - 1) * e(i - 1) / q;
    if (q < 0) ++count;
  }
  return count;
}

// Solve (T - shift I) w = rhs with partial pivoting (fill-in one band).
void shifted_solve(const RVector& d, const RVector& e, double shift, std::vector<double>& w) {
  const Index n = d.size();
  std::vector<double> lo(n, 0.0), di(n), up(n, 0.0), up2(n, 0.0);
  for (Index i = 0; i < n; ++i) di[i] = d(i) - shift;
  for (Index i = 0; i + 1 < n; ++i) {
    lo[i + 1] = e(i);
    up[i] = e(i);
  }
  constexpr double tiny = 1e-300;
  for (Index i = 0; i + 1 < n; ++i) {
    if (std::abs(di[i]) >= std::abs(lo[i + 1])) {
      if (std::abs(di[i]) < tiny) di[i] = tiny;
      const double m = lo[i + 1] / di[i];
      di[i + 1] -= m * up[i];
      w[i + 1] -= m * w[i];
      lo[i + 1] = 0.0;
    } else {
      // Swap rows i and i+1.
      std::swap(di[i], lo[i + 1]);
      std::swap(up[i], di[i + 1]);
      if (i + 2 < n) up2[i] = up[i + 1], up[i + 1] = 0.0;
      std::swap(w[i], w[i + 1]);
      const double m = lo[i + 1] / di[i];
      di[i + 1] -= m * up[i];
      if (i + 2 < n) up[i + 1] -= m * up2[i];
      w[i + 1] -= m * w[i];
      lo[i + 1] = 0.0;
    }
  }
  // Back substitution.
  if (std::abs(di[n - 1]) < tiny) di[n - 1] = tiny;
  w[n - 1] /= di[n - 1];
  if (n >= 2) {
    if (std::abs(di[n - 2]) < tiny) di[n - 2] = tiny;
    w[n - 2] = (w[n - 2] - up[n - 2] * w[n - 1]) / di[n - 2];
  }
  for (Index i = n - 3; i >= 0; --i) {
    if (std::abs(di[i]) < tiny) di[i] = tiny;
    w[i] = (w[i] - up[i] * w[i + 1] - up2[i] * w[i + 2]) / di[i];
  }
}

// Deterministic start vector; mt19937 output is fully specified.
void fill_start_vector(std::vector<double>& v, int level) {
  std::mt19937 rng(0x5eed0000u + static_cast<std::uint32_t>(level));
  for (auto& x : v) x = 2.0 * (rng() / 4294967296.0) - 1.0;
}

}  // namespace

TridiagEigenResult lowest_eigenpairs(const RVector& d, const RVector& e, int k) {
  const Index n = d.size();
  if (n < 2) throw std::invalid_argument("tridiagonal matrix needs dim >= 2");
  if (e.size() != n - 1) throw ShapeError("offdiagonal must have dim-1 entries");
  if (k < 1 || k > n) throw std::invalid_argument("requested level count out of range");

  // Gershgorin bounds.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Index i = 0; i < n; ++i) {
    const double r =
        (i > 0 ? std::abs(e(i - 1)) : 0.0) + (i + 1 < n ? std::abs(e(i)) : 0.0);
    lo = std::min(lo, d(i) - r);
    hi = std::max(hi, d(i) + r);
  }
  const double scale = std::max(std::abs(lo), std::abs(hi));
  const double eps = std::numeric_limits<double>::epsilon();
  double emax2 = 0.0;
  for (Index i = 0; i + 1 < n; ++i) emax2 = std::max(emax2, e(i) * e(i));
  const double pivmin = std::max(emax2 * std::numeric_limits<double>::min(), 1e-300);

  TridiagEigenResult out;
  out.eigenvalues.resize(k);
  out.eigenvectors.resize(n, k);

  for (int m = 0; m < k; ++m) {
    double a = lo, b = hi;
    for (int iter = 0; iter < 210 && (b - a) > 2.0 * eps * std::max(scale, 1.0); ++iter) {
      const double mid = 0.5 * (a + b);
      if (sturm_count(d, e, mid, pivmin) >= m + 1)
        b = mid;
      else
        a = mid;
    }
    out.eigenvalues(m) = 0.5 * (a + b);
  }

  // Inverse iteration, reorthogonalizing against already-accepted vectors.
  std::vector<double> w(n);
  for (int m = 0; m < k; ++m) {
    double shift = out.eigenvalues(m);
    if (m > 0 && shift - out.eigenvalues(m - 1) < 2.0 * eps * std::max(scale, 1.0))
      shift += 4.0 * eps * std::max(scale, 1.0);  // separate exact ties

    fill_start_vector(w, m);
    bool converged = false;
    for (int iter = 0; iter < 32 && !converged; ++iter) {
      shifted_solve(d, e, shift, w);
      for (int j = 0; j < m; ++j) {
        double dot = 0.0;
        for (Index i = 0; i < n; ++i) dot += out.eigenvectors(i, j) * w[i];
        for (Index i = 0; i < n; ++i) w[i] -= dot * out.eigenvectors(i, j);
      }
      double nrm = 0.0;
      for (double x : w) nrm += x * x;
      nrm = std::sqrt(nrm);
      if (nrm == 0.0) {
        fill_start_vector(w, m + 101 * (iter + 1));
        continue;
      }
      for (auto& x : w) x /= nrm;

      double resid = 0.0;
      for (Index i = 0; i < n; ++i) {
        double t = (d(i) - out.eigenvalues(m)) * w[i];
        if (i > 0) t += e(i - 1) * w[i - 1];
        if (i + 1 < n) t += e(i) * w[i + 1];
        resid = std::max(resid, std::abs(t));
      }
      converged = resid <= 1e-11 * std::max(scale, 1.0);
    }
    if (!converged)
      throw NumericError("tridiagonal eigensolver did not converge for level " +
                         std::to_string(m));

    // Rayleigh quotient sharpens the eigenvalue; fix the sign by the
    // largest-magnitude component.
    double rq = 0.0;
    for (Index i = 0; i < n; ++i) {
      double t = d(i) * w[i];
      if (i > 0) t += e(i - 1) * w[i - 1];
      if (i + 1 < n) t += e(i) * w[i + 1];
      rq += w[i] * t;
    }
    out.eigenvalues(m) = rq;
    Index imax = 0;
    for (Index i = 1; i < n; ++i)
      if (std::abs(w[i]) > std::abs(w[imax])) imax = i;
    const double sgn = w[imax] >= 0.0 ? 1.0 : -1.0;
    for (Index i = 0; i < n; ++i) out.eigenvectors(i, m) = sgn * w[i];
  }

  // Bisection already orders the eigenvalues; Rayleigh refinement keeps the
  // ordering for separations above machine precision.
  return out;
}

}  // namespace decosim::detail
