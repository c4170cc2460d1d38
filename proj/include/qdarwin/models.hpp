#pragma once

#include <cstdint>

#include "qdarwin/geometry.hpp"
#include "qdarwin/qstate.hpp"
#include "qdarwin/random.hpp"

namespace qdarwin {

// Parameters of the imperfect information-extraction model: a qubit
// system prepared in sqrt(1-p)|0> + sqrt(p) e^{i phi}|1> interacting with
// every environment qubit through a controlled unitary.
struct CMaybeSpec {
  enum class Mode { Ideal, Gamma, Haar };
  Mode mode = Mode::Gamma;
  double p = 0.5;
  double phi = 0.0;
  double gamma = 1.0;  // branch-1 gate mixes sigma_x and sigma_z by sqrt(gamma)
  int n_env = 0;       // environment qubits, at most 20 (dense kernels)
  int m = 1;           // fragment size; labels only, the dynamics ignores it
  std::uint64_t seed = 0;

  void validate() const;
};

// Layout shared by all model builders: environment qubits first (fragment
// factors 0..m-1, remainder m..N-1), system last.
SubsystemLayout cmaybe_layout(const CMaybeSpec& spec);

// Applies the controlled gates sequentially for qubits 1..N starting from
// the all-zero environment. Ideal/gamma modes only.
PureState build_cmaybe_state(const CMaybeSpec& spec);

// Closed-form assembly of the same state: branch 0 keeps the environment
// in |0...0>, branch 1 carries (sqrt(1-gamma)|0> + sqrt(gamma)|1>) per qubit.
PureState analytic_cmaybe_state(const CMaybeSpec& spec);

// Large-environment limit of the system's geometric state: point masses
// (1-p, p) on the pointer states.
GeometricState limiting_geometric_state(double p);

// Haar-distributed 2x2 unitary.
Matrix haar_random_su2(RandomStream& rng);

// Controlled gates with independent Haar pairs (U_i^0, U_i^1) per qubit;
// deterministic for a fixed spec.seed.
PureState build_haar_cmaybe_state(const CMaybeSpec& spec);

// Dispatch on spec.mode.
PureState build_model_state(const CMaybeSpec& spec);

}  // namespace qdarwin
