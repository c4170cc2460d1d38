#pragma once

#include <vector>

#include "qdarwin/geometry.hpp"
#include "qdarwin/infotheory.hpp"
#include "qdarwin/qstate.hpp"

namespace qdarwin {

// Conditional decomposition of a tripartite pure state along a pointer
// basis: |psi> = sum_n sqrt(y_n) |n> |phi_n>, branches below 1e-14
// probability omitted.
struct BranchDecomposition {
  std::vector<double> y;              // branch probabilities, sum = 1
  std::vector<Vector> branch_states;  // normalized, on the environment layout
  std::vector<std::size_t> branch_index;  // pointer index n per retained branch
  PointerBasis pointer_basis;
  SubsystemLayout env_layout;
  SubsystemLayout full_layout;
};

// Generalized GHZ candidate: one product environment record per branch.
struct BranchingCandidate {
  std::vector<double> y;
  std::vector<Vector> f;     // per-branch fragment component
  std::vector<Vector> fbar;  // per-branch remainder component
  Matrix gram_f;             // cross-branch overlap diagnostics
  Matrix gram_fbar;
  std::vector<std::size_t> branch_index;
  PointerBasis pointer_basis;
  SubsystemLayout env_layout;
  std::vector<int> cut;      // fragment positions within env_layout
  bool degenerate_schmidt = false;  // leading Schmidt gap below 1e-12 somewhere
};

struct TheoremRecord {
  double eps_discord = 0.0;  // measured discord upper bound
  double eps_info = 0.0;     // |I(S:F) - H_S|
  double fidelity = 0.0;     // to the distinguishable-record branching form
  double eta = 0.0;          // 1 - fidelity
  std::vector<double> branch_entropies;  // per-branch entanglement across F|Fbar
  double branch_entropy_sum = 0.0;       // sum_n y_n H(sigma_F^n)
  double mutual_information = 0.0;
  double system_entropy = 0.0;
  double offdiag_mass = 0.0;  // pointer-basis off-diagonal mass of rho_S
  bool good_decoherence = false;
};

BranchDecomposition branch_decompose(const PureState& state, const PointerBasis& pointers);

// Inverse of branch_decompose, for round-trip checks.
PureState reassemble(const BranchDecomposition& decomp);

// Per-branch leading Schmidt pair across (cut | rest of environment);
// y copied from the decomposition, Gram matrices reported, no
// cross-branch orthogonalization.
BranchingCandidate closest_branching_candidate(const BranchDecomposition& decomp,
                                               const std::vector<int>& cut);

// Same candidate with the record families made orthonormal (symmetric
// orthogonalization, pairing preserved), i.e. distinguishable records.
BranchingCandidate orthonormalized_records(const BranchingCandidate& candidate);

// Squared overlap with the best branching state assembled from the
// candidate's components: sum_n y_n |<phi_n | f_n (x) fbar_n>|^2, which is
// |<psi|GHZ>|^2 maximized over branch weights and phases.
double ghz_fidelity(const PureState& state, const BranchingCandidate& candidate);

// arccos of the root overlap, on the same scale as fubini_study_distance.
double fubini_study_to_branching(const PureState& state, const BranchingCandidate& candidate);

// Full diagnostic bundle for one state at fragment size m: discord and
// plateau deviations, proximity to the nearest distinguishable-record
// branching state, per-branch entanglement, and the decoherence flag
// (pointer-basis off-diagonal mass of rho_S below 1e-3).
TheoremRecord theorem_check(const PureState& state, int m, const DiscordOptions& options = {});

}  // namespace qdarwin
