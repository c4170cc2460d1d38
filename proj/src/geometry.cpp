#include "qdarwin/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qdarwin {

namespace {

void check_orthonormal(const Matrix& basis, const char* what) {
  Matrix gram = basis.adjoint() * basis;
  gram -= Matrix::Identity(basis.cols(), basis.cols());
  if (gram.cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument(std::string("non-orthonormal basis: ") + what);
  }
  if (basis.rows() != basis.cols()) {
    throw std::invalid_argument(std::string("basis does not span the subsystem: ") + what);
  }
}

GeometricState extract_from_tensor(const Matrix& psi, int ds, std::size_t df,
                                   std::size_t dfbar) {
  // psi: rows indexed by system i, columns by alpha + df*beta.
  GeometricState out;
  out.system_dim = ds;
  out.points.reserve(std::min<std::size_t>(df * dfbar, 1u << 20));
  for (std::size_t beta = 0; beta < dfbar; ++beta) {
    for (std::size_t alpha = 0; alpha < df; ++alpha) {
      // loop order gives points sorted by (alpha, beta) after a stable sort
      const Vector col = psi.col(alpha + df * beta);
      const double w = col.squaredNorm();
      if (w < kWeightPruneThreshold) continue;
      out.points.push_back(GeometricPoint{w, col / std::sqrt(w), alpha, beta});
    }
  }
  std::stable_sort(out.points.begin(), out.points.end(),
                   [](const GeometricPoint& a, const GeometricPoint& b) {
                     if (a.fragment_index != b.fragment_index) {
                       return a.fragment_index < b.fragment_index;
                     }
                     return a.remainder_index < b.remainder_index;
                   });
  return out;
}

Matrix gather_tensor(const PureState& state) {
  const auto& layout = state.layout;
  const std::vector<int> sys{layout.system_factor()};
  const auto frag = layout.factors_with(Role::Fragment);
  const auto rem = layout.factors_with(Role::Remainder);
  const auto s_off = subset_offsets(layout, sys);
  const auto f_off = subset_offsets(layout, frag);
  const auto r_off = subset_offsets(layout, rem);
  const std::size_t ds = s_off.size();
  const std::size_t df = f_off.size();
  const std::size_t dr = r_off.size();

  Matrix psi(ds, df * dr);
  for (std::size_t b = 0; b < dr; ++b) {
    for (std::size_t a = 0; a < df; ++a) {
      for (std::size_t i = 0; i < ds; ++i) {
        psi(i, a + df * b) = state.amplitudes[s_off[i] + f_off[a] + r_off[b]];
      }
    }
  }
  return psi;
}

}  // namespace

double GeometricState::total_mass() const {
  double m = 0.0;
  for (const auto& p : points) m += p.weight;
  return m;
}

void PointerBasis::validate() const {
  if (vectors.empty()) throw std::invalid_argument("pointer basis: empty");
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (std::abs(vectors[i].norm() - 1.0) > 1e-12) {
      throw std::invalid_argument("pointer basis: vector not unit norm");
    }
    for (std::size_t j = i + 1; j < vectors.size(); ++j) {
      if (std::abs(vectors[i].dot(vectors[j])) >= 1e-12) {
        throw std::invalid_argument("pointer basis: vectors not orthogonal");
      }
    }
  }
}

PointerBasis PointerBasis::computational(int dim) {
  PointerBasis basis;
  for (int n = 0; n < dim; ++n) {
    Vector v = Vector::Zero(dim);
    v[n] = 1.0;
    basis.vectors.push_back(v);
  }
  return basis;
}

GeometricState extract_geometric_state(const PureState& state) {
  const auto& layout = state.layout;
  const std::size_t ds = static_cast<std::size_t>(layout.dims[layout.system_factor()]);
  const std::size_t df = layout.dim_of(layout.factors_with(Role::Fragment));
  const std::size_t dr = layout.dim_of(layout.factors_with(Role::Remainder));
  return extract_from_tensor(gather_tensor(state), static_cast<int>(ds), df, dr);
}

GeometricState extract_geometric_state(const PureState& state,
                                       const Matrix& fragment_basis,
                                       const Matrix& remainder_basis) {
  const auto& layout = state.layout;
  const std::size_t ds = static_cast<std::size_t>(layout.dims[layout.system_factor()]);
  const std::size_t df = layout.dim_of(layout.factors_with(Role::Fragment));
  const std::size_t dr = layout.dim_of(layout.factors_with(Role::Remainder));
  if (static_cast<std::size_t>(fragment_basis.rows()) != df) {
    throw std::invalid_argument("fragment basis dimension mismatch");
  }
  if (static_cast<std::size_t>(remainder_basis.rows()) != dr) {
    throw std::invalid_argument("remainder basis dimension mismatch");
  }
  check_orthonormal(fragment_basis, "fragment");
  check_orthonormal(remainder_basis, "remainder");

  Matrix psi = gather_tensor(state);  // ds x (df*dr), computational labels

  // Relabel: psi'_{i,alpha,beta} = sum_{a,b} conj(F(a,alpha)) conj(R(b,beta)) psi_{i,a,b}.
  Matrix out(psi.rows(), psi.cols());
  const Matrix fc = fragment_basis.conjugate();
  const Matrix rc = remainder_basis.conjugate();
  // fragment transform per remainder block
  for (std::size_t b = 0; b < dr; ++b) {
    out.middleCols(b * df, df) = psi.middleCols(b * df, df) * fc;
  }
  // remainder transform: columns regrouped as (i,alpha) rows x beta
  Matrix tmp(psi.rows() * df, dr);
  for (std::size_t b = 0; b < dr; ++b) {
    tmp.col(b) = out.middleCols(b * df, df).reshaped();
  }
  tmp = Matrix(tmp * rc);
  for (std::size_t b = 0; b < dr; ++b) {
    out.middleCols(b * df, df) = tmp.col(b).reshaped(psi.rows(), df);
  }
  return extract_from_tensor(out, static_cast<int>(ds), df, dr);
}

double fubini_study_distance(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("fubini_study_distance: dimension mismatch");
  }
  const double overlap = std::min(1.0, std::abs(a.dot(b)));
  return std::acos(overlap);
}

std::array<double, 3> bloch_coordinates(const Vector& chi) {
  if (chi.size() != 2) throw std::invalid_argument("bloch_coordinates: dimension must be 2");
  const Complex cross = std::conj(chi[0]) * chi[1];
  return {2.0 * cross.real(), 2.0 * cross.imag(),
          std::norm(chi[0]) - std::norm(chi[1])};
}

double cap_measure(const GeometricState& gqs, const Vector& center, double radius) {
  if (radius < 0.0 || radius > 0.5) {
    throw std::invalid_argument("cap_measure: radius must lie in [0, 0.5] (fractions of pi)");
  }
  const double limit = radius * std::numbers::pi + 1e-12;
  double mass = 0.0;
  for (const auto& p : gqs.points) {
    if (fubini_study_distance(p.conditional, center) <= limit) mass += p.weight;
  }
  return mass;
}

ClusterAssignment assign_clusters(const GeometricState& gqs, const PointerBasis& pointers,
                                  double mass_floor) {
  if (mass_floor < 0.0 || mass_floor >= 1.0) {
    throw std::invalid_argument("assign_clusters: mass_floor must lie in [0, 1)");
  }
  pointers.validate();
  ClusterAssignment out;
  out.radii.assign(pointers.vectors.size(), 0.0);
  out.masses.assign(pointers.vectors.size(), 0.0);
  for (std::size_t k = 0; k < gqs.points.size(); ++k) {
    const auto& p = gqs.points[k];
    if (p.weight <= mass_floor) continue;
    int best = 0;
    double best_dist = fubini_study_distance(p.conditional, pointers.vectors[0]);
    for (std::size_t n = 1; n < pointers.vectors.size(); ++n) {
      const double d = fubini_study_distance(p.conditional, pointers.vectors[n]);
      if (d < best_dist) {
        best_dist = d;
        best = static_cast<int>(n);
      }
    }
    out.point_index.push_back(k);
    out.cluster.push_back(best);
    out.masses[best] += p.weight;
    out.radii[best] = std::max(out.radii[best], best_dist);
  }
  return out;
}

DensityMatrix reconstruct_density(const GeometricState& gqs) {
  Matrix rho = Matrix::Zero(gqs.system_dim, gqs.system_dim);
  for (const auto& p : gqs.points) {
    rho += p.weight * (p.conditional * p.conditional.adjoint());
  }
  rho = ((rho + rho.adjoint()) / 2.0).eval();
  SubsystemLayout layout{{gqs.system_dim}, {Role::System}};
  return DensityMatrix{rho, layout};
}

}  // namespace qdarwin
