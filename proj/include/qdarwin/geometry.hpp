#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "qdarwin/qstate.hpp"

namespace qdarwin {

// One atom of the geometric quantum state: the conditional system state
// reached when the environment is resolved onto basis element
// (fragment_index, remainder_index), carrying its probability weight.
struct GeometricPoint {
  double weight = 0.0;
  Vector conditional;           // unit vector on the system space
  std::size_t fragment_index = 0;
  std::size_t remainder_index = 0;
};

// Finite weighted point measure on the system's projective space.
// Points are sorted by (fragment_index, remainder_index); entries with
// weight below the pruning threshold are omitted.
struct GeometricState {
  std::vector<GeometricPoint> points;
  int system_dim = 0;

  double total_mass() const;
};

// Weight below which extracted points are dropped.
inline constexpr double kWeightPruneThreshold = 1e-14;

struct PointerBasis {
  std::vector<Vector> vectors;  // orthonormal, one per pointer state

  void validate() const;        // pairwise overlaps < 1e-12, unit norms
  static PointerBasis computational(int dim);
};

struct ClusterAssignment {
  // Parallel to the retained-point list below.
  std::vector<std::size_t> point_index;  // index into GeometricState::points
  std::vector<int> cluster;              // assigned pointer index per retained point
  std::vector<double> radii;             // per-pointer max distance of its members
  std::vector<double> masses;            // per-pointer total member weight
};

// Extraction in the computational product bases of fragment and remainder.
GeometricState extract_geometric_state(const PureState& state);

// Extraction with caller-supplied orthonormal bases (columns) on the
// fragment and remainder spaces. Throws on a non-orthonormal basis.
GeometricState extract_geometric_state(const PureState& state,
                                       const Matrix& fragment_basis,
                                       const Matrix& remainder_basis);

// arccos |<a|b>| in [0, pi/2]; projective (global phases drop out).
double fubini_study_distance(const Vector& a, const Vector& b);

// (b_x, b_y, b_z) of a qubit ray.
std::array<double, 3> bloch_coordinates(const Vector& chi);

// Total weight within Fubini-Study distance radius*pi of `center`.
// `radius` is a fraction of pi in [0, 0.5]; 0.5 covers the whole space.
double cap_measure(const GeometricState& gqs, const Vector& center, double radius);

// Nearest-pointer assignment of every point with weight > mass_floor.
// Ties go to the lowest pointer index.
ClusterAssignment assign_clusters(const GeometricState& gqs, const PointerBasis& pointers,
                                  double mass_floor);

// Weighted sum of conditional-state projectors; equals the reduced
// system state of the source within numerical tolerance.
DensityMatrix reconstruct_density(const GeometricState& gqs);

}  // namespace qdarwin
