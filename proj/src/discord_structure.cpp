#include "qdarwin/discord_structure.hpp"

#include <algorithm>
#include <cmath>

#include "qdarwin/random.hpp"

namespace qdarwin {

namespace {

// Two largest weights per remainder column determine the worst cross
// product; points are already pruned below kWeightPruneThreshold.
struct ColumnStats {
  double top = 0.0, second = 0.0, mass = 0.0;
  std::size_t top_alpha = 0;
  int labels_above_tol = 0;
};

std::map<std::size_t, ColumnStats> column_stats(const GeometricState& gqs, double tol) {
  std::map<std::size_t, ColumnStats> cols;
  for (const auto& p : gqs.points) {
    auto& c = cols[p.remainder_index];
    c.mass += p.weight;
    if (p.weight > tol) ++c.labels_above_tol;
    if (p.weight > c.top) {
      c.second = c.top;
      c.top = p.weight;
      c.top_alpha = p.fragment_index;
    } else if (p.weight > c.second) {
      c.second = p.weight;
    }
  }
  return cols;
}

}  // namespace

ExclusivityResult check_exclusive_support(const GeometricState& gqs, double tol) {
  ExclusivityResult out;
  for (const auto& [beta, c] : column_stats(gqs, tol)) {
    out.max_cross_product = std::max(out.max_cross_product, c.top * c.second);
  }
  out.passed = out.max_cross_product <= tol;
  return out;
}

RecordMap extract_record_map(const GeometricState& gqs, double tol) {
  RecordMap map;
  for (const auto& [beta, c] : column_stats(gqs, tol)) {
    if (c.mass <= tol) continue;
    if (c.labels_above_tol > 1) {
      throw std::runtime_error("ambiguous record map: remainder label " +
                               std::to_string(beta) + " carries two fragment labels");
    }
    map[beta] = c.top_alpha;
  }
  return map;
}

FrobeniusResult frobenius_identity_check(const PureState& state, double tol,
                                         const Matrix* fragment_basis) {
  const auto& layout = state.layout;
  const auto env = layout.environment_factors();
  const auto rem = layout.factors_with(Role::Remainder);
  const auto frag = layout.factors_with(Role::Fragment);
  if (frag.empty() || rem.empty()) {
    throw std::invalid_argument("frobenius check needs nonempty fragment and remainder");
  }

  DensityMatrix rho_env = partial_trace(state, env);
  DensityMatrix rho_rem = partial_trace(state, rem);

  std::vector<int> frag_pos;
  for (std::size_t p = 0; p < env.size(); ++p) {
    if (std::find(frag.begin(), frag.end(), env[p]) != frag.end()) {
      frag_pos.push_back(static_cast<int>(p));
    }
  }
  const std::size_t df = layout.dim_of(frag);
  Matrix basis_cols =
      fragment_basis ? *fragment_basis : Matrix(Matrix::Identity(df, df));
  MeasurementBasis basis = MeasurementBasis::from_columns(basis_cols);

  DensityMatrix dephased = dephase(rho_env, frag_pos, basis);

  const double lhs = rho_rem.matrix.squaredNorm();
  const double d_hs = hilbert_schmidt_distance(dephased, rho_env);
  const double assembled =
      0.5 * (dephased.matrix.squaredNorm() + rho_env.matrix.squaredNorm() - d_hs);
  const double direct = (dephased.matrix * rho_env.matrix).trace().real();

  FrobeniusResult out;
  out.residual = std::abs(lhs - assembled);
  out.cross_check = std::abs(assembled - direct);
  out.passed = out.residual <= tol;
  return out;
}

NullityCertificate certify_structure(const PureState& state, double tol,
                                     const Matrix* fragment_basis,
                                     const Matrix* remainder_basis) {
  const auto& layout = state.layout;
  const std::size_t df = layout.dim_of(layout.factors_with(Role::Fragment));
  const std::size_t dr = layout.dim_of(layout.factors_with(Role::Remainder));
  const Matrix bf = fragment_basis ? *fragment_basis : Matrix(Matrix::Identity(df, df));
  const Matrix br = remainder_basis ? *remainder_basis : Matrix(Matrix::Identity(dr, dr));

  NullityCertificate cert;
  cert.tolerance = tol;
  GeometricState gqs = extract_geometric_state(state, bf, br);
  cert.exclusivity = check_exclusive_support(gqs, tol);
  try {
    cert.record_map = extract_record_map(gqs, tol);
    cert.record_map_extracted = true;
  } catch (const std::runtime_error&) {
    cert.record_map_extracted = false;
  }
  cert.frobenius = frobenius_identity_check(state, tol, &bf);
  return cert;
}

Matrix reduced_eigenbasis(const PureState& state, const std::vector<int>& factors) {
  DensityMatrix rho = partial_trace(state, factors);
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix);
  return es.eigenvectors();
}

PureState build_zero_discord_state(const std::vector<double>& probabilities,
                                   const std::vector<Matrix>& sigmas,
                                   std::uint64_t seed, std::size_t remainder_dim) {
  const std::size_t branches = probabilities.size();
  if (branches == 0 || sigmas.size() != branches) {
    throw std::invalid_argument("zero-discord state: need one sigma per probability");
  }
  double total = 0.0;
  for (double p : probabilities) {
    if (p < -1e-12) throw std::invalid_argument("zero-discord state: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw std::invalid_argument("zero-discord state: probabilities must sum to 1");
  }
  const int ds = static_cast<int>(sigmas.front().rows());
  for (const auto& s : sigmas) {
    if (s.rows() != ds || s.cols() != ds) {
      throw std::invalid_argument("zero-discord state: sigma dimension mismatch");
    }
    if ((s - s.adjoint()).cwiseAbs().maxCoeff() > 1e-10 ||
        std::abs(s.trace() - Complex(1.0, 0.0)) > 1e-10) {
      throw std::invalid_argument("zero-discord state: sigma is not a density matrix");
    }
  }
  const std::size_t needed = branches * static_cast<std::size_t>(ds);
  if (remainder_dim == 0) remainder_dim = needed;
  if (remainder_dim < needed) {
    throw std::invalid_argument("zero-discord state: insufficient remainder dimension");
  }

  SubsystemLayout layout{
      {static_cast<int>(branches), static_cast<int>(remainder_dim), ds},
      {Role::Fragment, Role::Remainder, Role::System}};
  const auto strides = layout.strides();

  Vector amp = Vector::Zero(layout.total_dim());
  for (std::size_t j = 0; j < branches; ++j) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(sigmas[j]);
    for (int k = 0; k < ds; ++k) {
      const double lambda = std::max(0.0, es.eigenvalues()[k]);
      if (lambda < 1e-15) continue;
      const double coeff = std::sqrt(probabilities[j] * lambda);
      const std::size_t rem_index = j * static_cast<std::size_t>(ds) + k;
      for (int i = 0; i < ds; ++i) {
        amp[j * strides[0] + rem_index * strides[1] + i * strides[2]] +=
            coeff * es.eigenvectors()(i, k);
      }
    }
  }

  if (seed != 0) {
    // Scramble the remainder so its eigenbasis is not axis-aligned; a local
    // unitary on the remainder preserves the zero-discord structure.
    RandomStream rng(derive_seed(seed, "zero-discord-remainder", 0));
    const Matrix u = haar_random_unitary(static_cast<int>(remainder_dim), rng);
    const auto rem_off = subset_offsets(layout, {1});
    const auto rest_off = subset_offsets(layout, {0, 2});
    Vector next = Vector::Zero(amp.size());
    for (std::size_t r = 0; r < rest_off.size(); ++r) {
      for (std::size_t b = 0; b < remainder_dim; ++b) {
        Complex acc = 0.0;
        for (std::size_t a = 0; a < remainder_dim; ++a) {
          acc += u(b, a) * amp[rem_off[a] + rest_off[r]];
        }
        next[rem_off[b] + rest_off[r]] = acc;
      }
    }
    amp = std::move(next);
  }
  return normalize(amp, layout);
}

PureState perturb_forbidden_slot(const PureState& state, double epsilon,
                                 const Matrix* fragment_basis,
                                 const Matrix* remainder_basis) {
  const auto& layout = state.layout;
  const std::size_t df = layout.dim_of(layout.factors_with(Role::Fragment));
  const std::size_t dr = layout.dim_of(layout.factors_with(Role::Remainder));
  const Matrix bf = fragment_basis ? *fragment_basis : Matrix(Matrix::Identity(df, df));
  const Matrix br = remainder_basis ? *remainder_basis : Matrix(Matrix::Identity(dr, dr));

  GeometricState gqs = extract_geometric_state(state, bf, br);
  if (gqs.points.empty()) throw std::invalid_argument("perturb: empty measure");
  const auto heaviest = std::max_element(
      gqs.points.begin(), gqs.points.end(),
      [](const GeometricPoint& a, const GeometricPoint& b) { return a.weight < b.weight; });
  const std::size_t alpha = (heaviest->fragment_index + 1) % df;
  const std::size_t beta = heaviest->remainder_index;
  const auto s_off = subset_offsets(layout, {layout.system_factor()});
  const auto f_off = subset_offsets(layout, layout.factors_with(Role::Fragment));
  const auto r_off = subset_offsets(layout, layout.factors_with(Role::Remainder));

  Vector amp = state.amplitudes;
  for (std::size_t a = 0; a < df; ++a) {
    for (std::size_t b = 0; b < dr; ++b) {
      const Complex cell = bf(a, alpha) * br(b, beta);
      if (cell != Complex(0.0, 0.0)) amp[s_off[0] + f_off[a] + r_off[b]] += epsilon * cell;
    }
  }
  return normalize(amp, layout);
}

PureState rebuild_branching_state(const GeometricState& gqs, const RecordMap& record_map,
                                  const SubsystemLayout& layout,
                                  const Matrix* fragment_basis,
                                  const Matrix* remainder_basis) {
  const std::vector<int> sys{layout.system_factor()};
  const auto frag = layout.factors_with(Role::Fragment);
  const auto rem = layout.factors_with(Role::Remainder);
  const auto s_off = subset_offsets(layout, sys);
  const auto f_off = subset_offsets(layout, frag);
  const auto r_off = subset_offsets(layout, rem);
  const std::size_t df = f_off.size();
  const std::size_t dr = r_off.size();
  const Matrix bf = fragment_basis ? *fragment_basis : Matrix(Matrix::Identity(df, df));
  const Matrix br = remainder_basis ? *remainder_basis : Matrix(Matrix::Identity(dr, dr));

  Vector amp = Vector::Zero(layout.total_dim());
  for (const auto& point : gqs.points) {
    auto it = record_map.find(point.remainder_index);
    if (it == record_map.end() || it->second != point.fragment_index) continue;
    const double coeff = std::sqrt(point.weight);
    for (std::size_t b = 0; b < dr; ++b) {
      const Complex rb = br(b, point.remainder_index);
      if (rb == Complex(0.0, 0.0)) continue;
      for (std::size_t a = 0; a < df; ++a) {
        const Complex fa = bf(a, point.fragment_index);
        if (fa == Complex(0.0, 0.0)) continue;
        for (Eigen::Index i = 0; i < point.conditional.size(); ++i) {
          amp[s_off[i] + f_off[a] + r_off[b]] += coeff * point.conditional[i] * fa * rb;
        }
      }
    }
  }
  return normalize(amp, layout);
}

}  // namespace qdarwin
