#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qdarwin/geometry.hpp"
#include "qdarwin/qstate.hpp"

namespace qdarwin {

// Rank-1 projective measurement family spanning a subsystem. Columns of
// `vectors` are the measurement directions; `angles` records the grid
// parameterization when one generated the basis. Orthonormality is a
// construction-time invariant (from_columns validates); the measurement
// kernels trust it rather than re-checking per call.
struct MeasurementBasis {
  Matrix vectors;
  std::vector<double> angles;

  std::size_t outcomes() const { return static_cast<std::size_t>(vectors.cols()); }
  void validate() const;  // completeness within 1e-10, orthogonality within 1e-12

  // (cos(t/2), e^{ip} sin(t/2)) and its orthogonal partner.
  static MeasurementBasis qubit(double theta, double phi);
  static MeasurementBasis from_columns(const Matrix& columns);
  // Product of per-qubit bases, first factor fastest.
  static MeasurementBasis product(const std::vector<MeasurementBasis>& parts);
};

struct DiscordOptions {
  enum class Mode { Auto, ExhaustiveGrid, PointerInduced };
  Mode mode = Mode::Auto;
  int theta_nodes = 64;    // 1-qubit Bloch grid
  int phi_nodes = 128;
  int theta_nodes_2q = 12; // per-qubit resolution of the 2-qubit product grid
  int phi_nodes_2q = 24;
  int refine_rounds = 3;   // local refinement, step halved per round
  int grid_max_qubits = 2; // largest fragment the exhaustive search accepts
  std::optional<PointerBasis> pointers;  // defaults to computational on the system
};

struct DiscordReport {
  double mutual_information = 0.0;
  double holevo_best = 0.0;
  double discord_upper = 0.0;  // mutual_information - holevo_best
  MeasurementBasis best_basis;
  std::string optimizer;       // "exhaustive-grid" | "pointer-induced"
  // The pointer-induced value is evaluated alongside the grid where
  // feasible so the gap between the two is visible.
  double holevo_pointer = 0.0;
  bool pointer_evaluated = false;
};

struct RelativeEntropyResult {
  double bits = 0.0;
  bool support_violation = false;  // bits is +infinity when set
};

struct EntropyGapResult {
  double gap = 0.0;  // H_F - H_Fbar in bits
  bool within = false;
};

// H_A + H_B - H_AB in bits; parts must be disjoint factor sets.
double mutual_information(const PureState& state, const std::vector<int>& part_a,
                          const std::vector<int>& part_b);

// Post-measurement (pinched) state sum_x P_x rho P_x with P_x the rank-1
// projectors of `basis` on `factors`, identity elsewhere.
DensityMatrix dephase(const DensityMatrix& rho, const std::vector<int>& factors,
                      const MeasurementBasis& basis);

// Accessible information about `other` from measuring `measured` in `basis`:
// H(rho_other) - sum_x p_x H(rho_other|x). Outcomes with probability
// below 1e-14 are skipped.
double holevo(const PureState& state, const std::vector<int>& measured,
              const std::vector<int>& other, const MeasurementBasis& basis);

// Upper bound on the discord D(S : measured fragment) from a finite
// measurement family: exhaustive grids for fragments of one or two
// qubits, the pointer-induced branch basis otherwise.
DiscordReport discord(const PureState& state, const std::vector<int>& fragment,
                      const DiscordOptions& options = {});

// D(rho || sigma) in bits. A support violation (rho mass outside sigma's
// support above 1e-10) yields a flagged infinity, not an error.
RelativeEntropyResult relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

// Squared Frobenius norm of the difference, tr[(a-b)(a-b)^dagger].
double hilbert_schmidt_distance(const DensityMatrix& a, const DensityMatrix& b);

// H_F - H_Fbar where F is the first m environment factors; `within` is
// true when the gap lies in [-eps_info, 1e-9].
EntropyGapResult entropy_gap_check(const PureState& state, int m, double eps_info);

// Measurement basis on the fragment induced by the pointer decomposition:
// leading fragment vectors of the pointer branches, symmetrically
// orthonormalized and completed to a full basis.
MeasurementBasis pointer_induced_basis(const PureState& state,
                                       const std::vector<int>& fragment,
                                       const PointerBasis& pointers);

// Symmetric (Loewdin) orthonormalization preserving the pairing between
// input and output columns; falls back to sequential orthogonalization
// with deterministic completion when the Gram matrix is near-singular.
Matrix orthonormalize_family(const Matrix& columns);

// Completes orthonormal columns to a full orthonormal basis of their space.
Matrix complete_basis(const Matrix& columns);

}  // namespace qdarwin
