#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qdarwin {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// Role of a tensor factor in the system / fragment / remainder split.
enum class Role : std::uint8_t { System, Fragment, Remainder };

// Ordered tensor factorization of a Hilbert space. Factor 0 is the
// fastest-varying amplitude index (little-endian convention); factor
// order is fixed at construction and shared by every kernel.
struct SubsystemLayout {
  std::vector<int> dims;    // local dimension per factor
  std::vector<Role> roles;  // role tag per factor

  std::size_t factor_count() const { return dims.size(); }
  std::size_t total_dim() const;
  std::size_t dim_of(const std::vector<int>& factors) const;
  std::vector<std::size_t> strides() const;

  int system_factor() const;
  std::vector<int> factors_with(Role role) const;
  std::vector<int> environment_factors() const;  // fragment then remainder, in factor order
  std::vector<int> all_factors() const;
  std::vector<int> complement(const std::vector<int>& factors) const;

  // Restriction of this layout to a factor subset (order preserved).
  SubsystemLayout restricted_to(const std::vector<int>& factors) const;

  void validate() const;
};

// Enumerates the global amplitude offsets generated by a factor subset:
// entry k is the offset of the k-th little-endian digit combination of
// the subset, so a full index is kept_offsets[k] + other_offsets[t].
std::vector<std::size_t> subset_offsets(const SubsystemLayout& layout,
                                        const std::vector<int>& factors);

struct PureState {
  Vector amplitudes;
  SubsystemLayout layout;

  std::size_t dim() const { return static_cast<std::size_t>(amplitudes.size()); }
};

struct DensityMatrix {
  Matrix matrix;
  SubsystemLayout layout;  // restricted to retained factors

  std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }
};

// Normalizes v into a PureState on the given layout.
// Throws std::invalid_argument("null state") on a zero vector.
PureState normalize(const Vector& v, const SubsystemLayout& layout);

// Validating DensityMatrix constructor: Hermitian within 1e-12 and
// unit trace within 1e-12, else std::invalid_argument.
DensityMatrix make_density_matrix(const Matrix& m, const SubsystemLayout& layout);

// Reduced density matrix on the kept factors. The pure-state overload
// contracts the traced factors directly; the mixed overload sums the
// traced diagonal blocks. Output dimension is the product of the kept
// dims, so callers keep it small.
DensityMatrix partial_trace(const PureState& state, const std::vector<int>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

// Eigenvalues of the reduced state on `factors`, computed on the smaller
// side of the cut (Gram matrix of the reshaped amplitude matrix), so the
// cost never exceeds O(min(dA,dB)^2 * max(dA,dB)). Ascending order.
RealVector reduced_spectrum(const PureState& state, const std::vector<int>& factors);

// Shannon entropy in bits of a nonnegative weight vector; weights in
// [-1e-10, 0) are clipped to zero, anything more negative throws.
double entropy_from_probs(const RealVector& probs);

// Von Neumann entropy in bits.
double von_neumann_entropy(const DensityMatrix& rho);

// Entropy in bits of the reduced state on `factors` of a pure state.
double subsystem_entropy(const PureState& state, const std::vector<int>& factors);

double purity(const DensityMatrix& rho);

struct SchmidtDecomposition {
  RealVector coefficients;  // descending, nonnegative, sum of squares = 1
  Matrix left;              // columns: vectors on the cut factors
  Matrix right;             // columns: vectors on the complement factors
};

// Schmidt decomposition across (cut | complement). Reconstruction
// sum_k c_k |left_k>|right_k> reproduces the input in the original
// amplitude ordering.
SchmidtDecomposition schmidt_decompose(const PureState& state,
                                       const std::vector<int>& cut);

// Applies CU = |0><0|_c (x) U0 + |1><1|_c (x) U1 with control on the
// system qubit and target on an environment qubit. U0, U1 must be
// unitary within 1e-12.
PureState apply_controlled_unitary(const PureState& state, int control, int target,
                                   const Eigen::Matrix2cd& u0,
                                   const Eigen::Matrix2cd& u1);

// <a|b> with dimension check.
Complex inner_product(const Vector& a, const Vector& b);

bool is_unitary(const Matrix& u, double tol = 1e-12);

// Expands an operator acting on `factors` to the full space of `layout`
// (identity on the other factors). Intended for small total dimensions.
Matrix embed_on_factors(const SubsystemLayout& layout, const std::vector<int>& factors,
                        const Matrix& op);

}  // namespace qdarwin
