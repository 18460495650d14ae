#include "decosim/relstate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "decosim/entropy.hpp"
#include "decosim/errors.hpp"
#include "decosim/tensor.hpp"

namespace decosim::relstate {

namespace {

void check_orthonormal_pair(const CVector& a, const CVector& b, const char* label) {
  if (a.size() != b.size()) throw ShapeError("branch states must share a dimension");
  if (std::abs(a.norm() - 1.0) > 1e-10 || std::abs(b.norm() - 1.0) > 1e-10)
    throw std::invalid_argument(std::string(label) + " states must be unit vectors");
  if (std::abs(a.dot(b)) > 1e-10)
    throw std::invalid_argument(std::string(label) + " states must be orthogonal");
}

}  // namespace

BipartiteState::BipartiteState(Index d1, Index d2, CMatrix amps)
    : dim_1(d1), dim_2(d2), amplitudes(std::move(amps)) {
  if (d1 < 1 || d2 < 1) throw std::invalid_argument("subsystem dims must be >= 1");
  if (amplitudes.rows() != d1 || amplitudes.cols() != d2)
    throw ShapeError("amplitude matrix must be dim_1 x dim_2");
  if (std::abs(amplitudes.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("bipartite state must have unit norm");
}

StateVector BipartiteState::to_state_vector() const {
  CVector flat(dim_1 * dim_2);
  for (Index i = 0; i < dim_1; ++i)
    for (Index j = 0; j < dim_2; ++j) flat(i * dim_2 + j) = amplitudes(i, j);
  return StateVector(std::move(flat));
}

DensityMatrix BipartiteState::reduced_1() const {
  CMatrix rho = amplitudes * amplitudes.adjoint();
  rho = 0.5 * (rho + rho.adjoint().eval());
  return DensityMatrix(std::move(rho));
}

DensityMatrix BipartiteState::reduced_2() const {
  CMatrix rho = amplitudes.transpose() * amplitudes.conjugate();
  rho = 0.5 * (rho + rho.adjoint().eval());
  return DensityMatrix(std::move(rho));
}

double BipartiteState::fidelity(const BipartiteState& other) const {
  if (dim_1 != other.dim_1 || dim_2 != other.dim_2)
    throw ShapeError("fidelity of states with different dims");
  Complex ov(0.0, 0.0);
  for (Index i = 0; i < dim_1; ++i)
    for (Index j = 0; j < dim_2; ++j) ov += std::conj(amplitudes(i, j)) * other.amplitudes(i, j);
  return std::abs(ov);
}

BipartiteState schmidt_decompose(BipartiteState state) {
  Eigen::JacobiSVD<CMatrix> svd(state.amplitudes, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtForm form;
  form.coefficients = svd.singularValues();
  form.basis_1 = svd.matrixU();
  // A = U S V^dagger means |Psi> = sum_k s_k |u_k> |conj(v_k)>.
  form.basis_2 = svd.matrixV().conjugate();

  // Deterministic phases: largest component of each side-1 vector is made
  // real positive, with the compensating phase moved to side 2.
  for (Index k = 0; k < form.coefficients.size(); ++k) {
    Index imax = 0;
    for (Index i = 1; i < form.basis_1.rows(); ++i)
      if (std::abs(form.basis_1(i, k)) > std::abs(form.basis_1(imax, k))) imax = i;
    const Complex pivot = form.basis_1(imax, k);
    if (std::abs(pivot) > 0.0) {
      const Complex phase = pivot / std::abs(pivot);
      form.basis_1.col(k) /= phase;
      form.basis_2.col(k) *= phase;
    }
  }
  for (Index k = 0; k + 1 < form.coefficients.size(); ++k) {
    if (form.coefficients(k) - form.coefficients(k + 1) <
        kEqualCoefficientTol * std::max(form.coefficients(0), 1e-300))
      form.degenerate = true;
  }
  state.schmidt = std::move(form);
  return state;
}

void TwoTermSchmidtState::validate() const {
  check_orthonormal_pair(alpha1, alpha2, "side-1");
  check_orthonormal_pair(beta1, beta2, "side-2");
  if (c1 < 0.0 || c2 < 0.0) throw std::invalid_argument("coefficients must be non-negative");
  if (std::abs(c1 * c1 + c2 * c2 - 1.0) > 1e-12)
    throw std::invalid_argument("coefficients must satisfy c1^2 + c2^2 = 1");
}

BipartiteState TwoTermSchmidtState::to_bipartite() const {
  validate();
  CMatrix amps = c1 * std::polar(1.0, phi1) * (alpha1 * beta1.transpose()) +
                 c2 * std::polar(1.0, phi2) * (alpha2 * beta2.transpose());
  return BipartiteState(alpha1.size(), beta1.size(), std::move(amps));
}

TwoTermSchmidtState make_two_term_state(Index dim_1, Index dim_2, double phi1, double phi2,
                                        double c1, double c2) {
  if (dim_1 < 2 || dim_2 < 2) throw std::invalid_argument("sides need dim >= 2");
  TwoTermSchmidtState s;
  s.alpha1 = CVector::Zero(dim_1);
  s.alpha2 = CVector::Zero(dim_1);
  s.alpha1(0) = 1.0;
  s.alpha2(1) = 1.0;
  s.beta1 = CVector::Zero(dim_2);
  s.beta2 = CVector::Zero(dim_2);
  s.beta1(0) = 1.0;
  s.beta2(1) = 1.0;
  s.phi1 = phi1;
  s.phi2 = phi2;
  s.c1 = c1;
  s.c2 = c2;
  s.validate();
  return s;
}

PhaseRemovalResult apply_local_phase_removal(const TwoTermSchmidtState& state) {
  state.validate();
  if (std::abs(state.c1 - state.c2) > kEqualCoefficientTol)
    throw std::invalid_argument("phase removal is defined for equal amplitudes");

  PhaseRemovalResult out;
  out.state = state;
  out.state.phi1 = 0.0;
  out.state.phi2 = 0.0;
  // Diagonal in the {beta1, beta2} plane, identity on the complement.
  const Index d2 = state.beta1.size();
  CMatrix u = CMatrix::Identity(d2, d2);
  u += (std::polar(1.0, -state.phi1) - 1.0) * (state.beta1 * state.beta1.adjoint());
  u += (std::polar(1.0, -state.phi2) - 1.0) * (state.beta2 * state.beta2.adjoint());
  out.unitary_side2 = std::move(u);
  return out;
}

PhaseRemovalResult apply_local_phase_removal(const BipartiteState& state) {
  BipartiteState with_schmidt = schmidt_decompose(state);
  const SchmidtForm& form = *with_schmidt.schmidt;
  Index rank = 0;
  for (Index k = 0; k < form.coefficients.size(); ++k)
    if (form.coefficients(k) > 1e-12) ++rank;
  if (rank != 2) throw std::invalid_argument("phase removal needs a 2-term Schmidt state");

  TwoTermSchmidtState s;
  s.alpha1 = form.basis_1.col(0);
  s.alpha2 = form.basis_1.col(1);
  s.beta1 = form.basis_2.col(0);
  s.beta2 = form.basis_2.col(1);
  s.c1 = form.coefficients(0);
  s.c2 = form.coefficients(1);
  s.phi1 = 0.0;  // the SVD absorbs phases into the bases
  s.phi2 = 0.0;
  PhaseRemovalResult out = apply_local_phase_removal(s);
  out.basis_ambiguous = form.degenerate;
  return out;
}

TwoTermSchmidtState swap_branches(const TwoTermSchmidtState& state, int side) {
  state.validate();
  TwoTermSchmidtState out = state;
  if (side == 1) {
    std::swap(out.alpha1, out.alpha2);
  } else if (side == 2) {
    std::swap(out.beta1, out.beta2);
  } else {
    throw std::invalid_argument("side must be 1 or 2");
  }
  return out;
}

std::vector<double> envariant_probabilities(const BipartiteState& state) {
  BipartiteState with_schmidt = schmidt_decompose(state);
  const SchmidtForm& form = *with_schmidt.schmidt;

  Index n = 0;
  for (Index k = 0; k < form.coefficients.size(); ++k)
    if (form.coefficients(k) > 1e-12) ++n;
  if (n < 2) throw std::invalid_argument("need at least two Schmidt branches");
  for (Index k = 0; k + 1 < n; ++k) {
    if (std::abs(form.coefficients(k) - form.coefficients(k + 1)) > kEqualCoefficientTol)
      throw std::invalid_argument(
          "Schmidt coefficients are not equal within 1e-10; use fine_grain for "
          "rational weights");
  }

  // Certifying chain: swap two branches on side 1, counterswap on side 2,
  // and demand the global state return exactly.
  const CMatrix& a = state.amplitudes;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      CMatrix u1 = CMatrix::Identity(state.dim_1, state.dim_1);
      const CVector ai = form.basis_1.col(i), aj = form.basis_1.col(j);
      u1 += ai * aj.adjoint() + aj * ai.adjoint() - ai * ai.adjoint() - aj * aj.adjoint();
      CMatrix u2 = CMatrix::Identity(state.dim_2, state.dim_2);
      const CVector bi = form.basis_2.col(i), bj = form.basis_2.col(j);
      u2 += bi * bj.adjoint() + bj * bi.adjoint() - bi * bi.adjoint() - bj * bj.adjoint();

      const CMatrix swapped = u1 * a * u2.transpose();
      if ((swapped - a).cwiseAbs().maxCoeff() > 1e-12)
        throw NumericError("envariance certification failed for transposition (" +
                           std::to_string(i) + ", " + std::to_string(j) + ")");
      // Reduced side-1 state must also be untouched by the side-1 swap alone.
      const CMatrix swapped_only_1 = u1 * a;
      const CMatrix r_before = a * a.adjoint();
      const CMatrix r_after = swapped_only_1 * swapped_only_1.adjoint();
      // (The swap permutes equal eigenvalues, so the reduced matrix itself
      // is invariant only for equal amplitudes; that is what makes the
      // argument work and it is what we certify.)
      if ((r_after - r_before).cwiseAbs().maxCoeff() > 1e-12)
        throw NumericError("side-1 reduced state changed under a side-1 swap");
    }
  }
  return std::vector<double>(static_cast<std::size_t>(n), 1.0 / double(n));
}

FineGrainResult fine_grain(const std::vector<long long>& numerators) {
  if (numerators.size() < 2) throw std::invalid_argument("need at least two branches");
  long long m_total = 0;
  for (long long m : numerators) {
    if (m < 1) throw std::invalid_argument("numerators must be >= 1");
    m_total += m;
  }
  if (m_total > 1000000)
    throw SizeError("fine graining is capped at denominator 10^6");

  const Index m = static_cast<Index>(m_total);
  CMatrix amps = CMatrix::Identity(m, m) / std::sqrt(double(m_total));
  FineGrainResult out{BipartiteState(m, m, std::move(amps)), {}, numerators, m_total, {}};

  out.branch_origin.resize(static_cast<std::size_t>(m_total));
  std::size_t pos = 0;
  for (std::size_t i = 0; i < numerators.size(); ++i)
    for (long long r = 0; r < numerators[i]; ++r) out.branch_origin[pos++] = int(i);

  // Probabilities are a counting fact; the division is the only float op.
  out.probabilities.resize(numerators.size());
  for (std::size_t i = 0; i < numerators.size(); ++i)
    out.probabilities[i] = double(numerators[i]) / double(m_total);
  return out;
}

std::vector<Index> BranchingState::factor_dims() const {
  std::vector<Index> dims{system_dim};
  dims.insert(dims.end(), fragment_dims.begin(), fragment_dims.end());
  return dims;
}

DensityMatrix BranchingState::global_density() const {
  return DensityMatrix::pure(StateVector(amplitudes));
}

BranchingState make_branching_state(
    const std::vector<std::pair<CVector, CVector>>& fragment_branch_states) {
  if (fragment_branch_states.empty()) throw std::invalid_argument("need at least one fragment");

  BranchingState out;
  out.system_dim = 2;
  CVector branch1(1), branch2(1);
  branch1(0) = 1.0;
  branch2(0) = 1.0;
  for (const auto& [f1, f2] : fragment_branch_states) {
    if (f1.size() != f2.size() || f1.size() < 2)
      throw ShapeError("fragment branch states need matching dim >= 2");
    if (std::abs(f1.norm() - 1.0) > 1e-12 || std::abs(f2.norm() - 1.0) > 1e-12)
      throw std::invalid_argument("fragment branch states must be unit vectors");
    out.fragment_dims.push_back(f1.size());
    out.record_overlaps.push_back(f1.dot(f2));
    branch1 = Eigen::kroneckerProduct(branch1, f1).eval();
    branch2 = Eigen::kroneckerProduct(branch2, f2).eval();
  }

  const Index env_dim = branch1.size();
  CVector amps = CVector::Zero(2 * env_dim);
  const double w = 1.0 / std::numbers::sqrt2;
  amps.head(env_dim) = w * branch1;   // system |0> branch
  amps.tail(env_dim) = w * branch2;   // system |1> branch
  out.amplitudes = std::move(amps);
  return out;
}

BranchingState make_record_state(int n_fragments, double record_overlap) {
  if (n_fragments < 1) throw std::invalid_argument("need at least one fragment");
  if (record_overlap < 0.0 || record_overlap > 1.0)
    throw std::invalid_argument("record overlap must lie in [0, 1]");
  CVector f1(2), f2(2);
  f1 << 1.0, 0.0;
  f2 << record_overlap, std::sqrt(std::max(0.0, 1.0 - record_overlap * record_overlap));
  std::vector<std::pair<CVector, CVector>> frags(n_fragments, {f1, f2});
  return make_branching_state(frags);
}

double mutual_information(const DensityMatrix& rho, const std::vector<Index>& dims,
                          const std::vector<std::size_t>& part_a,
                          const std::vector<std::size_t>& part_b) {
  std::vector<std::size_t> joint = part_a;
  joint.insert(joint.end(), part_b.begin(), part_b.end());
  std::sort(joint.begin(), joint.end());
  if (std::adjacent_find(joint.begin(), joint.end()) != joint.end())
    throw std::invalid_argument("partitions must be disjoint");

  const double h_a = von_neumann_entropy(partial_trace_keep(rho, dims, part_a));
  const double h_b = von_neumann_entropy(partial_trace_keep(rho, dims, part_b));
  const double h_ab = von_neumann_entropy(partial_trace_keep(rho, dims, joint));
  return h_a + h_b - h_ab;
}

double mutual_information(const BranchingState& state,
                          const std::vector<std::size_t>& fragment_subset) {
  std::vector<std::size_t> part_b;
  part_b.reserve(fragment_subset.size());
  for (std::size_t f : fragment_subset) {
    if (f >= state.fragment_dims.size())
      throw std::invalid_argument("fragment index out of range");
    part_b.push_back(f + 1);  // factor 0 is the system
  }
  std::sort(part_b.begin(), part_b.end());
  return mutual_information(state.global_density(), state.factor_dims(), {0}, part_b);
}

RedundancyProfile redundancy_profile(const BranchingState& state, int max_size,
                                     std::uint64_t seed) {
  const int total = static_cast<int>(state.fragment_dims.size());
  if (max_size < 1 || max_size > total)
    throw std::invalid_argument("fragment-subset size out of range");

  RedundancyProfile out;
  const DensityMatrix global = state.global_density();
  const std::vector<Index> dims = state.factor_dims();
  out.system_entropy_bits = von_neumann_entropy(partial_trace_keep(global, dims, {0}));
  auto info_of = [&](const std::vector<std::size_t>& subset) {
    std::vector<std::size_t> part_b;
    part_b.reserve(subset.size());
    for (std::size_t f : subset) part_b.push_back(f + 1);
    return mutual_information(global, dims, {0}, part_b);
  };

  for (int size = 1; size <= max_size; ++size) {
    // Number of subsets of this size, saturating at the enumeration cap.
    double n_subsets = 1.0;
    for (int i = 0; i < size; ++i) n_subsets *= double(total - i) / double(i + 1);

    double sum = 0.0;
    int count = 0;
    if (n_subsets <= 1e4) {
      std::vector<std::size_t> subset(size);
      std::iota(subset.begin(), subset.end(), 0);
      while (true) {
        sum += info_of(subset);
        ++count;
        // Next combination in lexicographic order.
        int i = size - 1;
        while (i >= 0 && subset[i] == std::size_t(total - size + i)) --i;
        if (i < 0) break;
        ++subset[i];
        for (int j = i + 1; j < size; ++j) subset[j] = subset[j - 1] + 1;
      }
    } else {
      std::mt19937_64 rng(seed + std::uint64_t(size));
      std::vector<std::size_t> all(total);
      std::iota(all.begin(), all.end(), 0);
      for (int s = 0; s < 256; ++s) {
        // Partial Fisher-Yates; uses raw engine output, so the sample is
        // identical on every platform.
        for (int i = 0; i < size; ++i) {
          const std::size_t j = i + std::size_t(rng() % std::uint64_t(total - i));
          std::swap(all[i], all[j]);
        }
        std::vector<std::size_t> subset(all.begin(), all.begin() + size);
        std::sort(subset.begin(), subset.end());
        sum += info_of(subset);
        ++count;
      }
    }
    const double mean_info = sum / count;
    if (mean_info < -1e-9 || mean_info > 2.0 * out.system_entropy_bits + 1e-9)
      throw NumericError("mutual information violated the pure-state bound 2 H(S)");
    out.fragment_sizes.push_back(size);
    out.mutual_information_bits.push_back(mean_info);
    out.deficit_bits.push_back(out.system_entropy_bits - mean_info);
  }
  return out;
}

BranchingState build_chain(const ChainOverlaps& overlaps) {
  auto in_range = [](double e) { return e >= 0.0 && e <= 1.0; };
  if (!in_range(overlaps.photon) || !in_range(overlaps.rhodopsin) || !in_range(overlaps.neuron))
    throw std::invalid_argument("stage overlaps must lie in [0, 1]");

  auto pair_with_overlap = [](double eps) {
    CVector f1(2), f2(2);
    f1 << 1.0, 0.0;
    f2 << eps, std::sqrt(std::max(0.0, 1.0 - eps * eps));
    return std::make_pair(f1, f2);
  };

  // Neuron resting/firing single-qubit states with overlap sqrt(eps_N);
  // the two three-neuron patterns (1,0,1) and (0,1,1) differ in two
  // neurons and share the third, so the pattern overlap is eps_N.
  const double eta = std::sqrt(overlaps.neuron);
  CVector resting(2), firing(2);
  resting << 1.0, 0.0;
  firing << eta, std::sqrt(std::max(0.0, 1.0 - eta * eta));

  std::vector<std::pair<CVector, CVector>> fragments;
  fragments.push_back(pair_with_overlap(overlaps.photon));
  fragments.push_back(pair_with_overlap(overlaps.rhodopsin));
  fragments.emplace_back(firing, resting);   // neuron 1: fires in branch 1
  fragments.emplace_back(resting, firing);   // neuron 2: fires in branch 2
  fragments.emplace_back(firing, firing);    // neuron 3: fires in both
  return make_branching_state(fragments);
}

Complex object_coherence(const BranchingState& state) {
  const DensityMatrix rho_obj =
      partial_trace_keep(state.global_density(), state.factor_dims(), {0});
  return rho_obj.entry(0, 1);
}

double neuron_dephase_estimate(double rate, double t) {
  if (rate <= 0.0) throw std::invalid_argument("rate must be > 0");
  if (t < 0.0) throw std::invalid_argument("t must be >= 0");
  return std::exp(-rate * t);
}

}  // namespace decosim::relstate
