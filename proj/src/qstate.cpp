#include "qdarwin/qstate.hpp"

#include <algorithm>
#include <cmath>

namespace qdarwin {

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kEigFloor = -1e-10;

void check_factor_subset(const SubsystemLayout& layout, const std::vector<int>& factors) {
  std::vector<bool> seen(layout.factor_count(), false);
  for (int f : factors) {
    if (f < 0 || static_cast<std::size_t>(f) >= layout.factor_count()) {
      throw std::invalid_argument("factor index out of range: " + std::to_string(f));
    }
    if (seen[f]) {
      throw std::invalid_argument("duplicate factor index: " + std::to_string(f));
    }
    seen[f] = true;
  }
}

double log2_entropy_term(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

}  // namespace

std::size_t SubsystemLayout::total_dim() const {
  std::size_t d = 1;
  for (int x : dims) d *= static_cast<std::size_t>(x);
  return d;
}

std::size_t SubsystemLayout::dim_of(const std::vector<int>& factors) const {
  std::size_t d = 1;
  for (int f : factors) d *= static_cast<std::size_t>(dims.at(f));
  return d;
}

std::vector<std::size_t> SubsystemLayout::strides() const {
  std::vector<std::size_t> s(dims.size());
  std::size_t acc = 1;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    s[k] = acc;
    acc *= static_cast<std::size_t>(dims[k]);
  }
  return s;
}

int SubsystemLayout::system_factor() const {
  for (std::size_t k = 0; k < roles.size(); ++k) {
    if (roles[k] == Role::System) return static_cast<int>(k);
  }
  throw std::logic_error("layout has no system factor");
}

std::vector<int> SubsystemLayout::factors_with(Role role) const {
  std::vector<int> out;
  for (std::size_t k = 0; k < roles.size(); ++k) {
    if (roles[k] == role) out.push_back(static_cast<int>(k));
  }
  return out;
}

std::vector<int> SubsystemLayout::environment_factors() const {
  std::vector<int> out = factors_with(Role::Fragment);
  std::vector<int> rem = factors_with(Role::Remainder);
  out.insert(out.end(), rem.begin(), rem.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> SubsystemLayout::all_factors() const {
  std::vector<int> out(factor_count());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = static_cast<int>(k);
  return out;
}

std::vector<int> SubsystemLayout::complement(const std::vector<int>& factors) const {
  std::vector<bool> in(factor_count(), false);
  for (int f : factors) in.at(f) = true;
  std::vector<int> out;
  for (std::size_t k = 0; k < factor_count(); ++k) {
    if (!in[k]) out.push_back(static_cast<int>(k));
  }
  return out;
}

SubsystemLayout SubsystemLayout::restricted_to(const std::vector<int>& factors) const {
  SubsystemLayout sub;
  for (int f : factors) {
    sub.dims.push_back(dims.at(f));
    sub.roles.push_back(roles.at(f));
  }
  return sub;
}

void SubsystemLayout::validate() const {
  if (dims.empty() || dims.size() != roles.size()) {
    throw std::invalid_argument("layout: dims/roles size mismatch");
  }
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("layout: factor dimension must be positive");
  }
  int systems = 0;
  for (Role r : roles) {
    if (r == Role::System) ++systems;
  }
  if (systems != 1) throw std::invalid_argument("layout: exactly one system factor required");
}

std::vector<std::size_t> subset_offsets(const SubsystemLayout& layout,
                                        const std::vector<int>& factors) {
  check_factor_subset(layout, factors);
  const auto strides = layout.strides();
  std::size_t n = layout.dim_of(factors);
  std::vector<std::size_t> offsets(n, 0);
  std::size_t block = 1;
  for (int f : factors) {
    const std::size_t d = static_cast<std::size_t>(layout.dims[f]);
    const std::size_t stride = strides[f];
    // extend the table: digit of factor f cycles with period `block`
    for (std::size_t k = block; k < block * d; ++k) {
      offsets[k] = offsets[k % block] + (k / block) * stride;
    }
    block *= d;
  }
  offsets.resize(block);
  return offsets;
}

PureState normalize(const Vector& v, const SubsystemLayout& layout) {
  layout.validate();
  if (static_cast<std::size_t>(v.size()) != layout.total_dim()) {
    throw std::invalid_argument("normalize: amplitude length does not match layout");
  }
  const double n = v.norm();
  if (n < 1e-200) throw std::invalid_argument("null state");
  return PureState{v / n, layout};
}

DensityMatrix make_density_matrix(const Matrix& m, const SubsystemLayout& layout) {
  if (m.rows() != m.cols() ||
      static_cast<std::size_t>(m.rows()) != layout.total_dim()) {
    throw std::invalid_argument("density matrix: dimension does not match layout");
  }
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermTol) {
    throw std::invalid_argument("density matrix: not Hermitian");
  }
  if (std::abs(m.trace() - Complex(1.0, 0.0)) > kTraceTol) {
    throw std::invalid_argument("density matrix: trace != 1");
  }
  return DensityMatrix{m, layout};
}

DensityMatrix partial_trace(const PureState& state, const std::vector<int>& keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  const auto traced = state.layout.complement(keep);
  const auto kept_off = subset_offsets(state.layout, keep);
  const auto traced_off = subset_offsets(state.layout, traced);
  const std::size_t dk = kept_off.size();

  Matrix rho = Matrix::Zero(dk, dk);
  for (std::size_t t : traced_off) {
    for (std::size_t r = 0; r < dk; ++r) {
      const Complex ar = state.amplitudes[kept_off[r] + t];
      if (ar == Complex(0.0, 0.0)) continue;
      for (std::size_t c = 0; c < dk; ++c) {
        rho(r, c) += ar * std::conj(state.amplitudes[kept_off[c] + t]);
      }
    }
  }
  // Symmetrize away round-off so downstream Hermiticity checks are exact.
  rho = ((rho + rho.adjoint()) / 2.0).eval();
  return DensityMatrix{rho, state.layout.restricted_to(keep)};
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  const auto traced = rho.layout.complement(keep);
  const auto kept_off = subset_offsets(rho.layout, keep);
  const auto traced_off = subset_offsets(rho.layout, traced);
  const std::size_t dk = kept_off.size();

  Matrix out = Matrix::Zero(dk, dk);
  for (std::size_t t : traced_off) {
    for (std::size_t r = 0; r < dk; ++r) {
      for (std::size_t c = 0; c < dk; ++c) {
        out(r, c) += rho.matrix(kept_off[r] + t, kept_off[c] + t);
      }
    }
  }
  out = ((out + out.adjoint()) / 2.0).eval();
  return DensityMatrix{out, rho.layout.restricted_to(keep)};
}

RealVector reduced_spectrum(const PureState& state, const std::vector<int>& factors) {
  if (factors.empty()) throw std::invalid_argument("reduced_spectrum: empty factor set");
  const auto other = state.layout.complement(factors);
  const auto a_off = subset_offsets(state.layout, factors);
  const auto b_off = subset_offsets(state.layout, other);
  const std::size_t da = a_off.size();
  const std::size_t db = b_off.size();

  Matrix m(da, db);
  for (std::size_t a = 0; a < da; ++a) {
    for (std::size_t b = 0; b < db; ++b) {
      m(a, b) = state.amplitudes[a_off[a] + b_off[b]];
    }
  }
  // Gram matrix on the smaller side; nonzero spectrum is shared.
  Matrix gram = (da <= db) ? Matrix(m * m.adjoint()) : Matrix(m.adjoint() * m);
  gram = ((gram + gram.adjoint()) / 2.0).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double entropy_from_probs(const RealVector& probs) {
  double h = 0.0;
  for (Eigen::Index k = 0; k < probs.size(); ++k) {
    double p = probs[k];
    if (p < kEigFloor) {
      throw std::runtime_error("entropy: eigenvalue below -1e-10, kernel bug suspected");
    }
    if (p < 0.0) p = 0.0;
    h += log2_entropy_term(p);
  }
  return h < 0.0 ? 0.0 : h;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix, Eigen::EigenvaluesOnly);
  return entropy_from_probs(es.eigenvalues());
}

double subsystem_entropy(const PureState& state, const std::vector<int>& factors) {
  return entropy_from_probs(reduced_spectrum(state, factors));
}

double purity(const DensityMatrix& rho) {
  return (rho.matrix * rho.matrix).trace().real();
}

SchmidtDecomposition schmidt_decompose(const PureState& state,
                                       const std::vector<int>& cut) {
  const auto other = state.layout.complement(cut);
  if (cut.empty() || other.empty()) {
    throw std::invalid_argument("schmidt_decompose: bipartition must be nonempty on both sides");
  }
  const auto a_off = subset_offsets(state.layout, cut);
  const auto b_off = subset_offsets(state.layout, other);
  Matrix m(a_off.size(), b_off.size());
  for (std::size_t a = 0; a < a_off.size(); ++a) {
    for (std::size_t b = 0; b < b_off.size(); ++b) {
      m(a, b) = state.amplitudes[a_off[a] + b_off[b]];
    }
  }
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition out;
  out.coefficients = svd.singularValues();
  out.left = svd.matrixU();
  // M = U S V^H, so amplitudes(a,b) = sum_k s_k U(a,k) conj(V(b,k)):
  // the right Schmidt vectors are the conjugated V columns.
  out.right = svd.matrixV().conjugate();
  return out;
}

PureState apply_controlled_unitary(const PureState& state, int control, int target,
                                   const Eigen::Matrix2cd& u0,
                                   const Eigen::Matrix2cd& u1) {
  const auto& layout = state.layout;
  check_factor_subset(layout, {control, target});
  if (control == target) throw std::invalid_argument("controlled unitary: control == target");
  if (layout.roles.at(control) != Role::System) {
    throw std::invalid_argument("controlled unitary: control must be the system factor");
  }
  if (layout.roles.at(target) == Role::System) {
    throw std::invalid_argument("controlled unitary: target must be an environment factor");
  }
  if (layout.dims.at(control) != 2 || layout.dims.at(target) != 2) {
    throw std::invalid_argument("controlled unitary: control and target must be qubits");
  }
  if (!is_unitary(u0) || !is_unitary(u1)) {
    throw std::invalid_argument("controlled unitary: gate is not unitary");
  }

  const auto strides = layout.strides();
  const std::size_t sc = strides[control];
  const std::size_t st = strides[target];
  const std::size_t dim = state.dim();

  Vector out = state.amplitudes;
  for (std::size_t g = 0; g < dim / 2; ++g) {
    // insert a zero target digit into the packed index g
    const std::size_t low = g % st;
    const std::size_t high = g / st;
    const std::size_t i0 = high * 2 * st + low;
    const std::size_t i1 = i0 + st;
    const Eigen::Matrix2cd& u = ((i0 / sc) % 2 == 0) ? u0 : u1;
    const Complex a0 = out[i0];
    const Complex a1 = out[i1];
    out[i0] = u(0, 0) * a0 + u(0, 1) * a1;
    out[i1] = u(1, 0) * a0 + u(1, 1) * a1;
  }
  return PureState{out, layout};
}

Complex inner_product(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("inner_product: dimension mismatch");
  return a.dot(b);  // Eigen's dot conjugates the left argument
}

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

Matrix embed_on_factors(const SubsystemLayout& layout, const std::vector<int>& factors,
                        const Matrix& op) {
  const std::size_t dsub = layout.dim_of(factors);
  if (static_cast<std::size_t>(op.rows()) != dsub ||
      static_cast<std::size_t>(op.cols()) != dsub) {
    throw std::invalid_argument("embed_on_factors: operator dimension mismatch");
  }
  const auto sub_off = subset_offsets(layout, factors);
  const auto rest_off = subset_offsets(layout, layout.complement(factors));
  const std::size_t dim = layout.total_dim();
  Matrix full = Matrix::Zero(dim, dim);
  for (std::size_t r : rest_off) {
    for (std::size_t a = 0; a < dsub; ++a) {
      for (std::size_t b = 0; b < dsub; ++b) {
        full(sub_off[a] + r, sub_off[b] + r) = op(a, b);
      }
    }
  }
  return full;
}

}  // namespace qdarwin
