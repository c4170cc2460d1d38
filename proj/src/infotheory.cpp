#include "qdarwin/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace qdarwin {

namespace {

constexpr double kOutcomeFloor = 1e-14;
constexpr double kBranchFloor = 1e-14;

void check_disjoint(const std::vector<int>& a, const std::vector<int>& b) {
  for (int x : a) {
    for (int y : b) {
      if (x == y) throw std::invalid_argument("factor sets overlap");
    }
  }
}

struct OutcomeProjection {
  double probability = 0.0;
  Vector rest;  // unnormalized amplitudes on the remaining factors
};

// Contracts the measured factors against `direction`, leaving a vector on
// the complementary factors (in their original relative order).
OutcomeProjection project_measured(const PureState& state, const std::vector<int>& measured,
                                   const Vector& direction) {
  const auto meas_off = subset_offsets(state.layout, measured);
  const auto rest_off = subset_offsets(state.layout, state.layout.complement(measured));
  if (static_cast<std::size_t>(direction.size()) != meas_off.size()) {
    throw std::invalid_argument("measurement direction dimension mismatch");
  }
  OutcomeProjection out;
  out.rest = Vector::Zero(rest_off.size());
  for (std::size_t r = 0; r < rest_off.size(); ++r) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < meas_off.size(); ++j) {
      acc += std::conj(direction[j]) * state.amplitudes[meas_off[j] + rest_off[r]];
    }
    out.rest[r] = acc;
  }
  out.probability = out.rest.squaredNorm();
  return out;
}

}  // namespace

void MeasurementBasis::validate() const {
  const auto n = vectors.cols();
  if (n == 0 || vectors.rows() != n) {
    throw std::invalid_argument("measurement basis must be a complete square family");
  }
  Matrix gram = vectors.adjoint() * vectors;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double expected = (i == j) ? 1.0 : 0.0;
      const double tol = (i == j) ? 1e-10 : 1e-12;
      if (std::abs(gram(i, j) - expected) > tol) {
        throw std::invalid_argument("measurement basis not orthonormal");
      }
    }
  }
}

MeasurementBasis MeasurementBasis::qubit(double theta, double phi) {
  MeasurementBasis basis;
  basis.vectors = Matrix(2, 2);
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Complex e = std::polar(1.0, phi);
  basis.vectors(0, 0) = c;
  basis.vectors(1, 0) = e * s;
  basis.vectors(0, 1) = s;
  basis.vectors(1, 1) = -e * c;
  basis.angles = {theta, phi};
  return basis;
}

MeasurementBasis MeasurementBasis::from_columns(const Matrix& columns) {
  MeasurementBasis basis;
  basis.vectors = columns;
  basis.validate();
  return basis;
}

MeasurementBasis MeasurementBasis::product(const std::vector<MeasurementBasis>& parts) {
  if (parts.empty()) throw std::invalid_argument("product basis: no parts");
  Matrix acc = parts.front().vectors;
  std::vector<double> angles = parts.front().angles;
  for (std::size_t k = 1; k < parts.size(); ++k) {
    const Matrix& next = parts[k].vectors;
    // first factor fastest: combined(i + d*j) = acc(i) * next(j)
    Matrix combined(acc.rows() * next.rows(), acc.cols() * next.cols());
    for (Eigen::Index cj = 0; cj < next.cols(); ++cj) {
      for (Eigen::Index ci = 0; ci < acc.cols(); ++ci) {
        for (Eigen::Index rj = 0; rj < next.rows(); ++rj) {
          combined.block(rj * acc.rows(), ci + cj * acc.cols(), acc.rows(), 1) =
              next(rj, cj) * acc.col(ci);
        }
      }
    }
    acc = std::move(combined);
    angles.insert(angles.end(), parts[k].angles.begin(), parts[k].angles.end());
  }
  MeasurementBasis basis;
  basis.vectors = std::move(acc);
  basis.angles = std::move(angles);
  return basis;
}

double mutual_information(const PureState& state, const std::vector<int>& part_a,
                          const std::vector<int>& part_b) {
  check_disjoint(part_a, part_b);
  std::vector<int> joint = part_a;
  joint.insert(joint.end(), part_b.begin(), part_b.end());
  std::sort(joint.begin(), joint.end());
  const double ha = subsystem_entropy(state, part_a);
  const double hb = subsystem_entropy(state, part_b);
  const double hab = subsystem_entropy(state, joint);
  return ha + hb - hab;
}

DensityMatrix dephase(const DensityMatrix& rho, const std::vector<int>& factors,
                      const MeasurementBasis& basis) {
  if (basis.outcomes() != rho.layout.dim_of(factors)) {
    throw std::invalid_argument("dephase: basis does not span the measured factors");
  }
  Matrix out = Matrix::Zero(rho.matrix.rows(), rho.matrix.cols());
  for (std::size_t x = 0; x < basis.outcomes(); ++x) {
    const Vector v = basis.vectors.col(x);
    const Matrix proj = embed_on_factors(rho.layout, factors, v * v.adjoint());
    out += proj * rho.matrix * proj;
  }
  out = ((out + out.adjoint()) / 2.0).eval();
  return DensityMatrix{out, rho.layout};
}

double holevo(const PureState& state, const std::vector<int>& measured,
              const std::vector<int>& other, const MeasurementBasis& basis) {
  check_disjoint(measured, other);
  if (basis.outcomes() != state.layout.dim_of(measured)) {
    throw std::invalid_argument("holevo: basis does not span the measured factors");
  }
  const double h_other = subsystem_entropy(state, other);

  // positions of `other` inside the post-measurement factor ordering
  const auto rest_factors = state.layout.complement(measured);
  const SubsystemLayout rest_layout = state.layout.restricted_to(rest_factors);
  std::vector<int> other_pos;
  for (std::size_t p = 0; p < rest_factors.size(); ++p) {
    if (std::find(other.begin(), other.end(), rest_factors[p]) != other.end()) {
      other_pos.push_back(static_cast<int>(p));
    }
  }

  double conditional = 0.0;
  for (std::size_t x = 0; x < basis.outcomes(); ++x) {
    auto proj = project_measured(state, measured, basis.vectors.col(x));
    if (proj.probability < kOutcomeFloor) continue;
    PureState cond{proj.rest / std::sqrt(proj.probability), rest_layout};
    conditional += proj.probability * subsystem_entropy(cond, other_pos);
  }
  return h_other - conditional;
}

RelativeEntropyResult relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.matrix.rows() != sigma.matrix.rows()) {
    throw std::invalid_argument("relative_entropy: dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma.matrix);
  const RealVector s = es.eigenvalues();
  const Matrix v = es.eigenvectors();

  double cross = 0.0;         // tr(rho log2 sigma) over sigma's support
  double outside_mass = 0.0;  // rho mass on sigma's null space
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    const double q = std::max(0.0, (v.col(k).adjoint() * rho.matrix * v.col(k))(0, 0).real());
    if (s[k] > 1e-14) {
      cross += q * std::log2(s[k]);
    } else {
      outside_mass += q;
    }
  }
  if (outside_mass > 1e-10) {
    return {std::numeric_limits<double>::infinity(), true};
  }
  return {-von_neumann_entropy(rho) - cross, false};
}

double hilbert_schmidt_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.matrix.rows() != b.matrix.rows()) {
    throw std::invalid_argument("hilbert_schmidt_distance: dimension mismatch");
  }
  return (a.matrix - b.matrix).squaredNorm();
}

EntropyGapResult entropy_gap_check(const PureState& state, int m, double eps_info) {
  const auto env = state.layout.environment_factors();
  if (m <= 0 || static_cast<std::size_t>(m) >= env.size()) {
    throw std::invalid_argument("entropy_gap_check: need 0 < m < N");
  }
  const std::vector<int> frag(env.begin(), env.begin() + m);
  const std::vector<int> rest(env.begin() + m, env.end());
  EntropyGapResult out;
  out.gap = subsystem_entropy(state, frag) - subsystem_entropy(state, rest);
  out.within = (out.gap >= -eps_info - 1e-9) && (out.gap <= 1e-9);
  return out;
}

Matrix orthonormalize_family(const Matrix& columns) {
  const Eigen::Index n = columns.cols();
  if (n == 1) return columns / columns.norm();
  Matrix gram = columns.adjoint() * columns;
  gram = ((gram + gram.adjoint()) / 2.0).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  if (es.eigenvalues().minCoeff() > 1e-8) {
    // Loewdin: closest orthonormal family, keeps the column pairing.
    Matrix inv_sqrt = es.eigenvectors() *
                      es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                      es.eigenvectors().adjoint();
    return columns * inv_sqrt;
  }
  // Near-dependent family: sequential orthogonalization, substituting the
  // first unspanned computational direction for collapsed columns.
  Matrix out(columns.rows(), n);
  Eigen::Index built = 0;
  auto residual = [&](Vector w) {
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index j = 0; j < built; ++j) {
        w -= out.col(j).dot(w) * out.col(j);
      }
    }
    return w;
  };
  for (Eigen::Index k = 0; k < n; ++k) {
    Vector w = residual(columns.col(k));
    if (w.norm() < 1e-6) {
      for (Eigen::Index e = 0; e < columns.rows(); ++e) {
        Vector cand = residual(Vector::Unit(columns.rows(), e));
        if (cand.norm() > 0.5) {
          w = cand;
          break;
        }
      }
    }
    out.col(built++) = w / w.norm();
  }
  return out;
}

Matrix complete_basis(const Matrix& columns) {
  const Eigen::Index dim = columns.rows();
  const Eigen::Index k = columns.cols();
  if (k == dim) return columns;
  // Householder Q of the (already orthonormal) columns: its trailing
  // columns are an orthonormal basis of the orthogonal complement.
  Eigen::HouseholderQR<Matrix> qr(columns);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  Matrix out(dim, dim);
  out.leftCols(k) = columns;
  out.rightCols(dim - k) = q.rightCols(dim - k);
  return out;
}

MeasurementBasis pointer_induced_basis(const PureState& state,
                                       const std::vector<int>& fragment,
                                       const PointerBasis& pointers) {
  pointers.validate();
  const std::vector<int> sys{state.layout.system_factor()};
  const auto rest_factors = state.layout.complement(sys);
  const SubsystemLayout rest_layout = state.layout.restricted_to(rest_factors);
  std::vector<int> frag_pos;
  for (std::size_t p = 0; p < rest_factors.size(); ++p) {
    if (std::find(fragment.begin(), fragment.end(), rest_factors[p]) != fragment.end()) {
      frag_pos.push_back(static_cast<int>(p));
    }
  }
  const std::size_t df = state.layout.dim_of(fragment);

  const bool whole_environment = frag_pos.size() == rest_layout.factor_count();
  std::vector<Vector> leads;
  for (const auto& n : pointers.vectors) {
    auto proj = project_measured(state, sys, n);
    if (proj.probability < kBranchFloor) continue;
    Vector branch = proj.rest / std::sqrt(proj.probability);
    if (whole_environment) {
      leads.push_back(std::move(branch));  // the branch itself is the record
    } else {
      auto schmidt = schmidt_decompose(PureState{branch, rest_layout}, frag_pos);
      leads.push_back(schmidt.left.col(0));
    }
  }
  if (leads.empty()) throw std::runtime_error("pointer_induced_basis: no occupied branch");

  Matrix family(df, static_cast<Eigen::Index>(leads.size()));
  for (std::size_t k = 0; k < leads.size(); ++k) family.col(k) = leads[k];
  Matrix full = complete_basis(orthonormalize_family(family));

  MeasurementBasis basis;
  basis.vectors = std::move(full);
  return basis;
}

namespace {

struct GridBest {
  double value = -std::numeric_limits<double>::infinity();
  std::vector<double> angles;
};

// Strictly-greater update keeps the earliest (lexicographically smallest)
// angle tuple on ties.
void consider(GridBest& best, double value, std::vector<double> angles) {
  if (value > best.value) {
    best.value = value;
    best.angles = std::move(angles);
  }
}

double wrap_phi(double phi) {
  const double two_pi = 2.0 * std::numbers::pi;
  phi = std::fmod(phi, two_pi);
  return phi < 0.0 ? phi + two_pi : phi;
}

double clamp_theta(double theta) {
  return std::clamp(theta, 0.0, std::numbers::pi);
}

}  // namespace

DiscordReport discord(const PureState& state, const std::vector<int>& fragment,
                      const DiscordOptions& options) {
  const int sys = state.layout.system_factor();
  check_disjoint({sys}, fragment);
  for (int f : fragment) {
    if (state.layout.roles.at(f) == Role::System) {
      throw std::invalid_argument("discord: fragment cannot contain the system factor");
    }
  }

  DiscordReport report;
  report.mutual_information = mutual_information(state, {sys}, fragment);

  bool all_qubits = true;
  for (int f : fragment) all_qubits = all_qubits && (state.layout.dims.at(f) == 2);
  const int frag_qubits = static_cast<int>(fragment.size());

  DiscordOptions::Mode mode = options.mode;
  if (mode == DiscordOptions::Mode::Auto) {
    mode = (all_qubits && frag_qubits <= options.grid_max_qubits)
               ? DiscordOptions::Mode::ExhaustiveGrid
               : DiscordOptions::Mode::PointerInduced;
  }
  if (mode == DiscordOptions::Mode::ExhaustiveGrid &&
      (!all_qubits || frag_qubits > options.grid_max_qubits)) {
    throw std::invalid_argument("discord: fragment too large for the exhaustive grid");
  }

  PointerBasis pointers =
      options.pointers ? *options.pointers
                       : PointerBasis::computational(state.layout.dims.at(sys));

  const MeasurementBasis pointer_basis = pointer_induced_basis(state, fragment, pointers);
  const double chi_pointer = holevo(state, fragment, {sys}, pointer_basis);
  report.holevo_pointer = chi_pointer;
  report.pointer_evaluated = true;

  if (mode == DiscordOptions::Mode::PointerInduced) {
    report.optimizer = "pointer-induced";
    report.holevo_best = chi_pointer;
    report.best_basis = pointer_basis;
    report.discord_upper = report.mutual_information - report.holevo_best;
    return report;
  }

  report.optimizer = "exhaustive-grid";
  GridBest best;
  auto eval_1q = [&](double theta, double phi) {
    return holevo(state, fragment, {sys}, MeasurementBasis::qubit(theta, phi));
  };

  if (frag_qubits == 1) {
    const int nt = options.theta_nodes;
    const int np = options.phi_nodes;
    for (int i = 0; i < nt; ++i) {
      const double theta = std::numbers::pi * i / (nt - 1);
      for (int j = 0; j < np; ++j) {
        const double phi = 2.0 * std::numbers::pi * j / np;
        consider(best, eval_1q(theta, phi), {theta, phi});
      }
    }
    double dt = std::numbers::pi / (nt - 1);
    double dp = 2.0 * std::numbers::pi / np;
    for (int round = 0; round < options.refine_rounds; ++round) {
      dt /= 2.0;
      dp /= 2.0;
      const auto center = best.angles;
      for (int a = -1; a <= 1; ++a) {
        for (int b = -1; b <= 1; ++b) {
          if (a == 0 && b == 0) continue;
          const double theta = clamp_theta(center[0] + a * dt);
          const double phi = wrap_phi(center[1] + b * dp);
          consider(best, eval_1q(theta, phi), {theta, phi});
        }
      }
    }
    report.best_basis = MeasurementBasis::qubit(best.angles[0], best.angles[1]);
  } else {
    // Two-qubit fragment: product bases only.
    auto eval_2q = [&](const std::vector<double>& a) {
      auto basis = MeasurementBasis::product(
          {MeasurementBasis::qubit(a[0], a[1]), MeasurementBasis::qubit(a[2], a[3])});
      return holevo(state, fragment, {sys}, basis);
    };
    const int nt = options.theta_nodes_2q;
    const int np = options.phi_nodes_2q;
    for (int i0 = 0; i0 < nt; ++i0) {
      for (int j0 = 0; j0 < np; ++j0) {
        for (int i1 = 0; i1 < nt; ++i1) {
          for (int j1 = 0; j1 < np; ++j1) {
            std::vector<double> angles{std::numbers::pi * i0 / (nt - 1),
                                       2.0 * std::numbers::pi * j0 / np,
                                       std::numbers::pi * i1 / (nt - 1),
                                       2.0 * std::numbers::pi * j1 / np};
            const double value = eval_2q(angles);
            consider(best, value, std::move(angles));
          }
        }
      }
    }
    double dt = std::numbers::pi / (nt - 1);
    double dp = 2.0 * std::numbers::pi / np;
    for (int round = 0; round < options.refine_rounds; ++round) {
      dt /= 2.0;
      dp /= 2.0;
      const auto center = best.angles;
      for (int a = -1; a <= 1; ++a) {
        for (int b = -1; b <= 1; ++b) {
          for (int c = -1; c <= 1; ++c) {
            for (int d = -1; d <= 1; ++d) {
              if (a == 0 && b == 0 && c == 0 && d == 0) continue;
              std::vector<double> angles{clamp_theta(center[0] + a * dt),
                                         wrap_phi(center[1] + b * dp),
                                         clamp_theta(center[2] + c * dt),
                                         wrap_phi(center[3] + d * dp)};
              const double value = eval_2q(angles);
              consider(best, value, std::move(angles));
            }
          }
        }
      }
    }
    report.best_basis = MeasurementBasis::product(
        {MeasurementBasis::qubit(best.angles[0], best.angles[1]),
         MeasurementBasis::qubit(best.angles[2], best.angles[3])});
  }

  // The searched family is the grid plus the pointer-induced basis; the
  // maximum over it is still a valid discord upper bound.
  if (chi_pointer > best.value) {
    report.holevo_best = chi_pointer;
    report.best_basis = pointer_basis;
  } else {
    report.holevo_best = best.value;
  }
  report.discord_upper = report.mutual_information - report.holevo_best;
  return report;
}

}  // namespace qdarwin
