#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "decosim/state.hpp"
#include "decosim/types.hpp"

namespace decosim::relstate {

/// Tolerance for certifying that Schmidt coefficients are equal; the
/// envariance argument is exact, so the numerical slack is tiny.
inline constexpr double kEqualCoefficientTol = 1e-10;

struct SchmidtForm {
  RVector coefficients;  // non-negative, descending
  CMatrix basis_1;       // columns: side-1 Schmidt vectors
  CMatrix basis_2;       // columns: side-2 Schmidt vectors
  bool degenerate = false;  // adjacent coefficients equal within 1e-10
};

/// Pure state of a bipartite system; amplitudes(i, j) multiplies
/// |i>_1 |j>_2. Unit global norm enforced at construction.
struct BipartiteState {
  Index dim_1 = 0;
  Index dim_2 = 0;
  CMatrix amplitudes;
  std::optional<SchmidtForm> schmidt;

  BipartiteState(Index d1, Index d2, CMatrix amps);
  StateVector to_state_vector() const;  // flattened, side-1-major
  DensityMatrix reduced_1() const;
  DensityMatrix reduced_2() const;

  /// |<this|other>|
  double fidelity(const BipartiteState& other) const;
};

/// SVD of the amplitude matrix, with a deterministic phase convention.
/// The reconstruction error is below 1e-10 by construction.
BipartiteState schmidt_decompose(BipartiteState state);

/// Two-branch Schmidt state carried in explicit form so the phases are
/// meaningful even when the coefficients are degenerate:
///   c1 e^{i phi1} |alpha1>|beta1> + c2 e^{i phi2} |alpha2>|beta2>.
struct TwoTermSchmidtState {
  CVector alpha1, alpha2;  // orthonormal side-1 pair
  CVector beta1, beta2;    // orthonormal side-2 pair
  double phi1 = 0.0, phi2 = 0.0;
  double c1 = 0.0, c2 = 0.0;  // non-negative

  void validate() const;
  BipartiteState to_bipartite() const;
};

TwoTermSchmidtState make_two_term_state(Index dim_1, Index dim_2, double phi1, double phi2,
                                        double c1, double c2);

struct PhaseRemovalResult {
  TwoTermSchmidtState state;  // phases zeroed
  CMatrix unitary_side2;      // the diagonal unitary that acted on side 2
  bool basis_ambiguous = false;
};

/// Cancels the branch phases with a unitary acting only on side 2; the
/// side-1 reduced state is untouched. Requires equal amplitudes.
PhaseRemovalResult apply_local_phase_removal(const TwoTermSchmidtState& state);

/// Same, starting from raw amplitudes: the Schmidt form is computed
/// first, and because equal coefficients make it non-unique the result
/// carries basis_ambiguous = true.
PhaseRemovalResult apply_local_phase_removal(const BipartiteState& state);

/// Exchanges the two branch labels on one side only.
TwoTermSchmidtState swap_branches(const TwoTermSchmidtState& state, int side);

/// Uniform outcome probabilities for an n-term equal-amplitude Schmidt
/// state. Before returning, certifies the envariance chain: every
/// transposition applied to side 1 and counterswapped on side 2 restores
/// the global state to fidelity 1 within 1e-12, with matching side-1
/// reduced states. Unequal coefficients are a precondition error that
/// points the caller at fine_grain.
std::vector<double> envariant_probabilities(const BipartiteState& state);

/// Born weights for rational probabilities |c_i|^2 = m_i / M: each branch
/// is embedded into m_i orthogonal equal-amplitude sub-branches of a
/// composite (branch x sub-branch) space entangled with an M-dimensional
/// ancilla, envariance makes the M fine-grained branches uniform, and
/// integer counting recovers m_i / M per original branch.
struct FineGrainResult {
  BipartiteState expanded;
  std::vector<int> branch_origin;        // size M: original branch per sub-branch
  std::vector<long long> numerators;     // m_i
  long long denominator = 0;             // M
  std::vector<double> probabilities;     // m_i / M
};
FineGrainResult fine_grain(const std::vector<long long>& numerators);

/// Two-branch system-plus-fragments state
///   (|0> prod_k |f_k^(1)> + |1> prod_k |f_k^(2)>)/sqrt(2),
/// where fragment k's branch states overlap as <f^(1)|f^(2)> =
/// record_overlaps[k]. Perfect records have overlap 0.
struct BranchingState {
  Index system_dim = 2;
  std::vector<Index> fragment_dims;
  CVector amplitudes;  // over system (x) fragments, system-major
  std::vector<Complex> record_overlaps;

  std::vector<Index> factor_dims() const;
  DensityMatrix global_density() const;
};

BranchingState make_branching_state(
    const std::vector<std::pair<CVector, CVector>>& fragment_branch_states);

/// Equal-overlap convenience: n_fragments qubit records, each with the
/// same real branch overlap in [0, 1].
BranchingState make_record_state(int n_fragments, double record_overlap);

/// I(A : B) = H(A) + H(B) - H(AB) in bits.
double mutual_information(const DensityMatrix& rho, const std::vector<Index>& dims,
                          const std::vector<std::size_t>& part_a,
                          const std::vector<std::size_t>& part_b);

/// I(S : fragments in subset), in bits.
double mutual_information(const BranchingState& state,
                          const std::vector<std::size_t>& fragment_subset);

struct RedundancyProfile {
  std::vector<int> fragment_sizes;
  std::vector<double> mutual_information_bits;  // averaged over subsets
  std::vector<double> deficit_bits;             // H(S) - I per size
  double system_entropy_bits = 0.0;
};

/// Averages I(S : F) over fragment subsets of each size 1..max_size;
/// exhaustive when C(total, size) <= 10^4, otherwise a fixed-seed
/// deterministic sample of 256 subsets.
RedundancyProfile redundancy_profile(const BranchingState& state, int max_size,
                                     std::uint64_t seed);

/// Visual-perception chain object-photon-rhodopsin-neurons with the
/// canonical three-neuron firing patterns (1,0,1) vs (0,1,1); the two
/// neuron patterns overlap as eps_neuron overall.
struct ChainOverlaps {
  double photon = 0.0;
  double rhodopsin = 0.0;
  double neuron = 0.0;
};
BranchingState build_chain(const ChainOverlaps& overlaps);

/// Off-diagonal of the reduced object state, via explicit partial trace.
/// Equals (1/2) times the product of all record overlaps.
Complex object_coherence(const BranchingState& state);

/// e^{-rate t}.
double neuron_dephase_estimate(double rate, double t);

/// Estimated decoherence time for a neuronal firing/resting
/// superposition, used as the labeled preset for the chain tooling.
inline constexpr double kNeuronDecoherenceTimeSeconds = 1e-20;

}  // namespace decosim::relstate
