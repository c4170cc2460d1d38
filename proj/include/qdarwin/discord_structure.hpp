#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "qdarwin/geometry.hpp"
#include "qdarwin/infotheory.hpp"
#include "qdarwin/qstate.hpp"

namespace qdarwin {

// Deterministic remainder-label -> fragment-label map: defined for every
// remainder column carrying mass above the tolerance.
using RecordMap = std::map<std::size_t, std::size_t>;

struct ExclusivityResult {
  bool passed = false;
  double max_cross_product = 0.0;  // largest weight product across distinct
                                   // fragment labels sharing a remainder label
};

struct FrobeniusResult {
  bool passed = false;
  double residual = 0.0;        // | ||rho_rem||^2 - tr(dephased * rho_env) | assembled form
  double cross_check = 0.0;     // |assembled form - direct element sum|
};

struct NullityCertificate {
  ExclusivityResult exclusivity;
  bool record_map_extracted = false;
  RecordMap record_map;
  FrobeniusResult frobenius;
  double tolerance = 0.0;

  bool all_passed() const {
    return exclusivity.passed && record_map_extracted && frobenius.passed;
  }
};

// True iff every remainder column of the measure is supported on a single
// fragment label up to `tol`; reports the worst cross product found.
ExclusivityResult check_exclusive_support(const GeometricState& gqs, double tol);

// For each remainder label with column mass above `tol`, the unique
// fragment label carrying it. Throws std::runtime_error when a column
// holds two fragment labels above `tol` (no single-valued map exists).
RecordMap extract_record_map(const GeometricState& gqs, double tol);

// Frobenius-norm identity between the remainder purity and the overlap of
// the environment state with its fragment-dephased counterpart. The
// dephasing basis on the fragment defaults to computational; the identity
// holds exactly iff the measure extracted in that basis is exclusive.
FrobeniusResult frobenius_identity_check(const PureState& state, double tol,
                                         const Matrix* fragment_basis = nullptr);

// Runs all three structural checks with the same caller-supplied bases
// (identity = computational when omitted).
NullityCertificate certify_structure(const PureState& state, double tol,
                                     const Matrix* fragment_basis = nullptr,
                                     const Matrix* remainder_basis = nullptr);

// Eigenbasis (columns, ascending eigenvalue order) of the reduced state on
// `factors` — the default certification basis for each environment side.
Matrix reduced_eigenbasis(const PureState& state, const std::vector<int>& factors);

// Purification of sum_j p_j sigma_j (x) |f_j><f_j| into system (x)
// fragment (x) remainder with orthogonal remainder blocks per branch.
// The fragment is a dim-|p| factor, the remainder one factor of dimension
// remainder_dim (0 = smallest sufficient). A nonzero seed applies a Haar
// unitary on the remainder so the block structure is not axis-aligned.
PureState build_zero_discord_state(const std::vector<double>& probabilities,
                                   const std::vector<Matrix>& sigmas,
                                   std::uint64_t seed = 0,
                                   std::size_t remainder_dim = 0);

// Adds amplitude `epsilon` to a forbidden slot of the state: the
// (fragment, remainder) cell holding the most weight keeps its remainder
// label but gets a different fragment label, so the exclusivity cross
// product rises by about epsilon^2 times that weight. The slot lives in
// the supplied bases (computational when omitted); certify the result in
// the same bases for the exact epsilon^2 arithmetic.
PureState perturb_forbidden_slot(const PureState& state, double epsilon,
                                 const Matrix* fragment_basis = nullptr,
                                 const Matrix* remainder_basis = nullptr);

// Reassembles the branching form implied by a record map:
// sum_beta sqrt(X_{g(beta),beta}) |chi> |f_{g(beta)}> |fbar_beta>.
// Bases must match the ones the measure was extracted in (null =
// computational). Result is normalized.
PureState rebuild_branching_state(const GeometricState& gqs, const RecordMap& record_map,
                                  const SubsystemLayout& layout,
                                  const Matrix* fragment_basis = nullptr,
                                  const Matrix* remainder_basis = nullptr);

}  // namespace qdarwin
