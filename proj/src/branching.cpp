#include "qdarwin/branching.hpp"

#include <algorithm>
#include <cmath>

namespace qdarwin {

namespace {

constexpr double kBranchFloor = 1e-14;

std::vector<int> positions_in(const std::vector<int>& haystack, const std::vector<int>& needles) {
  std::vector<int> out;
  for (std::size_t p = 0; p < haystack.size(); ++p) {
    if (std::find(needles.begin(), needles.end(), haystack[p]) != needles.end()) {
      out.push_back(static_cast<int>(p));
    }
  }
  return out;
}

// <f (x) fbar | phi> with phi on the environment layout and the cut giving
// the fragment positions.
Complex record_overlap(const Vector& phi, const SubsystemLayout& env_layout,
                       const std::vector<int>& cut, const Vector& f, const Vector& fbar) {
  const auto f_off = subset_offsets(env_layout, cut);
  std::vector<int> rest;
  for (int p = 0; p < static_cast<int>(env_layout.factor_count()); ++p) {
    if (std::find(cut.begin(), cut.end(), p) == cut.end()) rest.push_back(p);
  }
  const auto r_off = subset_offsets(env_layout, rest);
  Complex acc = 0.0;
  for (std::size_t a = 0; a < f_off.size(); ++a) {
    if (f[a] == Complex(0.0, 0.0)) continue;
    for (std::size_t b = 0; b < r_off.size(); ++b) {
      acc += std::conj(f[a] * fbar[b]) * phi[f_off[a] + r_off[b]];
    }
  }
  return acc;
}

}  // namespace

BranchDecomposition branch_decompose(const PureState& state, const PointerBasis& pointers) {
  pointers.validate();
  const auto& layout = state.layout;
  const int sys = layout.system_factor();
  if (static_cast<std::size_t>(layout.dims[sys]) != pointers.vectors.size() ||
      pointers.vectors.front().size() != layout.dims[sys]) {
    throw std::invalid_argument("branch_decompose: pointer basis does not span the system");
  }
  const auto s_off = subset_offsets(layout, {sys});
  const auto rest_factors = layout.complement({sys});
  const auto e_off = subset_offsets(layout, rest_factors);

  BranchDecomposition out;
  out.pointer_basis = pointers;
  out.env_layout = layout.restricted_to(rest_factors);
  out.full_layout = layout;
  for (std::size_t n = 0; n < pointers.vectors.size(); ++n) {
    const Vector& ptr = pointers.vectors[n];
    Vector block(e_off.size());
    for (std::size_t b = 0; b < e_off.size(); ++b) {
      Complex acc = 0.0;
      for (std::size_t i = 0; i < s_off.size(); ++i) {
        acc += std::conj(ptr[i]) * state.amplitudes[s_off[i] + e_off[b]];
      }
      block[b] = acc;
    }
    const double y = block.squaredNorm();
    if (y < kBranchFloor) continue;
    out.y.push_back(y);
    out.branch_states.push_back(block / std::sqrt(y));
    out.branch_index.push_back(n);
  }
  return out;
}

PureState reassemble(const BranchDecomposition& decomp) {
  const auto& layout = decomp.full_layout;
  const int sys = layout.system_factor();
  const auto s_off = subset_offsets(layout, {sys});
  const auto e_off = subset_offsets(layout, layout.complement({sys}));
  Vector amp = Vector::Zero(layout.total_dim());
  for (std::size_t k = 0; k < decomp.y.size(); ++k) {
    const Vector& ptr = decomp.pointer_basis.vectors[decomp.branch_index[k]];
    const double c = std::sqrt(decomp.y[k]);
    for (std::size_t i = 0; i < s_off.size(); ++i) {
      if (ptr[i] == Complex(0.0, 0.0)) continue;
      for (std::size_t b = 0; b < e_off.size(); ++b) {
        amp[s_off[i] + e_off[b]] += c * ptr[i] * decomp.branch_states[k][b];
      }
    }
  }
  return PureState{amp, layout};
}

BranchingCandidate closest_branching_candidate(const BranchDecomposition& decomp,
                                               const std::vector<int>& cut) {
  BranchingCandidate cand;
  cand.y = decomp.y;
  cand.branch_index = decomp.branch_index;
  cand.pointer_basis = decomp.pointer_basis;
  cand.env_layout = decomp.env_layout;
  cand.cut = cut;

  for (const auto& phi : decomp.branch_states) {
    PureState branch{phi, decomp.env_layout};
    auto schmidt = schmidt_decompose(branch, cut);
    if (schmidt.coefficients.size() > 1 &&
        schmidt.coefficients[0] - schmidt.coefficients[1] < 1e-12) {
      cand.degenerate_schmidt = true;  // deterministic tie-break: SVD order
    }
    cand.f.push_back(schmidt.left.col(0));
    cand.fbar.push_back(schmidt.right.col(0));
  }

  const auto k = static_cast<Eigen::Index>(cand.f.size());
  cand.gram_f = Matrix(k, k);
  cand.gram_fbar = Matrix(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      cand.gram_f(i, j) = cand.f[i].dot(cand.f[j]);
      cand.gram_fbar(i, j) = cand.fbar[i].dot(cand.fbar[j]);
    }
  }
  return cand;
}

BranchingCandidate orthonormalized_records(const BranchingCandidate& candidate) {
  BranchingCandidate out = candidate;
  const auto k = static_cast<Eigen::Index>(candidate.f.size());
  if (k <= 1) return out;
  Matrix f_cols(candidate.f.front().size(), k);
  Matrix fbar_cols(candidate.fbar.front().size(), k);
  for (Eigen::Index i = 0; i < k; ++i) {
    f_cols.col(i) = candidate.f[i];
    fbar_cols.col(i) = candidate.fbar[i];
  }
  const Matrix f_ortho = orthonormalize_family(f_cols);
  const Matrix fbar_ortho = orthonormalize_family(fbar_cols);
  for (Eigen::Index i = 0; i < k; ++i) {
    out.f[i] = f_ortho.col(i);
    out.fbar[i] = fbar_ortho.col(i);
    for (Eigen::Index j = 0; j < k; ++j) {
      out.gram_f(i, j) = out.f[i].dot(out.f[j]);
      out.gram_fbar(i, j) = out.fbar[i].dot(out.fbar[j]);
    }
  }
  return out;
}

double ghz_fidelity(const PureState& state, const BranchingCandidate& candidate) {
  if (state.layout.dim_of(state.layout.complement({state.layout.system_factor()})) !=
      candidate.env_layout.total_dim()) {
    throw std::invalid_argument("ghz_fidelity: dimension mismatch");
  }
  BranchDecomposition decomp = branch_decompose(state, candidate.pointer_basis);
  double fid = 0.0;
  for (std::size_t k = 0; k < decomp.y.size(); ++k) {
    // align on the pointer index
    const auto it = std::find(candidate.branch_index.begin(), candidate.branch_index.end(),
                              decomp.branch_index[k]);
    if (it == candidate.branch_index.end()) continue;
    const std::size_t c = static_cast<std::size_t>(it - candidate.branch_index.begin());
    const Complex overlap = record_overlap(decomp.branch_states[k], candidate.env_layout,
                                           candidate.cut, candidate.f[c], candidate.fbar[c]);
    fid += decomp.y[k] * std::norm(overlap);
  }
  return fid;
}

double fubini_study_to_branching(const PureState& state, const BranchingCandidate& candidate) {
  const double fid = std::clamp(ghz_fidelity(state, candidate), 0.0, 1.0);
  return std::acos(std::sqrt(fid));
}

TheoremRecord theorem_check(const PureState& state, int m, const DiscordOptions& options) {
  const auto& layout = state.layout;
  const auto env = layout.environment_factors();
  if (m <= 0 || static_cast<std::size_t>(m) >= env.size()) {
    throw std::invalid_argument("theorem_check: need 0 < m < N");
  }
  const int sys = layout.system_factor();
  const std::vector<int> fragment(env.begin(), env.begin() + m);

  TheoremRecord rec;
  rec.mutual_information = mutual_information(state, {sys}, fragment);
  rec.system_entropy = subsystem_entropy(state, {sys});
  rec.eps_info = std::abs(rec.mutual_information - rec.system_entropy);

  DiscordReport discord_report = discord(state, fragment, options);
  rec.eps_discord = discord_report.discord_upper;

  const PointerBasis pointers =
      options.pointers ? *options.pointers : PointerBasis::computational(layout.dims[sys]);
  BranchDecomposition decomp = branch_decompose(state, pointers);

  const auto frag_pos = positions_in(layout.complement({sys}), fragment);
  BranchingCandidate candidate = closest_branching_candidate(decomp, frag_pos);
  // Proximity is measured against distinguishable records: the per-branch
  // record families are orthonormalized before the overlap.
  BranchingCandidate records = orthonormalized_records(candidate);
  rec.fidelity = ghz_fidelity(state, records);
  rec.eta = 1.0 - rec.fidelity;

  for (std::size_t k = 0; k < decomp.y.size(); ++k) {
    PureState branch{decomp.branch_states[k], decomp.env_layout};
    const double h = entropy_from_probs(reduced_spectrum(branch, frag_pos));
    rec.branch_entropies.push_back(h);
    rec.branch_entropy_sum += decomp.y[k] * h;
  }

  // rho_S off-diagonal mass in the pointer basis
  DensityMatrix rho_s = partial_trace(state, {sys});
  Matrix p_cols(layout.dims[sys], pointers.vectors.size());
  for (std::size_t n = 0; n < pointers.vectors.size(); ++n) p_cols.col(n) = pointers.vectors[n];
  const Matrix rho_ptr = p_cols.adjoint() * rho_s.matrix * p_cols;
  for (Eigen::Index i = 0; i < rho_ptr.rows(); ++i) {
    for (Eigen::Index j = 0; j < rho_ptr.cols(); ++j) {
      if (i != j) rec.offdiag_mass += std::abs(rho_ptr(i, j));
    }
  }
  rec.good_decoherence = rec.offdiag_mass < 1e-3;
  return rec;
}

}  // namespace qdarwin
