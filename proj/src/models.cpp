#include "qdarwin/models.hpp"

#include <cmath>

namespace qdarwin {

namespace {

constexpr int kMaxEnvQubits = 20;

Eigen::Matrix2cd gamma_gate(double gamma) {
  // sqrt(gamma) sigma_x + sqrt(1-gamma) sigma_z; unitary for gamma in [0,1]
  Eigen::Matrix2cd u;
  const double sx = std::sqrt(gamma);
  const double sz = std::sqrt(1.0 - gamma);
  u << sz, sx, sx, -sz;
  return u;
}

Vector initial_amplitudes(const CMaybeSpec& spec, const SubsystemLayout& layout) {
  Vector amp = Vector::Zero(layout.total_dim());
  const std::size_t sys_stride = layout.strides()[layout.system_factor()];
  amp[0] = std::sqrt(1.0 - spec.p);
  amp[sys_stride] = std::sqrt(spec.p) * std::polar(1.0, spec.phi);
  return amp;
}

}  // namespace

void CMaybeSpec::validate() const {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("c-maybe: p must lie in [0, 1]");
  if (n_env < 1) throw std::invalid_argument("c-maybe: need at least one environment qubit");
  if (n_env > kMaxEnvQubits) throw std::invalid_argument("dense limit exceeded");
  if (m < 1 || m > n_env) throw std::invalid_argument("c-maybe: fragment size out of range");
  if (mode == Mode::Gamma && (gamma <= 0.0 || gamma > 1.0)) {
    throw std::invalid_argument("c-maybe: gamma must lie in (0, 1]");
  }
}

SubsystemLayout cmaybe_layout(const CMaybeSpec& spec) {
  SubsystemLayout layout;
  layout.dims.assign(spec.n_env + 1, 2);
  layout.roles.assign(spec.n_env + 1, Role::Remainder);
  for (int k = 0; k < spec.m; ++k) layout.roles[k] = Role::Fragment;
  layout.roles[spec.n_env] = Role::System;
  return layout;
}

PureState build_cmaybe_state(const CMaybeSpec& spec) {
  spec.validate();
  if (spec.mode == CMaybeSpec::Mode::Haar) {
    throw std::invalid_argument("build_cmaybe_state: haar mode has its own builder");
  }
  const double gamma = (spec.mode == CMaybeSpec::Mode::Ideal) ? 1.0 : spec.gamma;
  const SubsystemLayout layout = cmaybe_layout(spec);
  PureState state{initial_amplitudes(spec, layout), layout};
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd u1 = gamma_gate(gamma);
  for (int i = 0; i < spec.n_env; ++i) {
    state = apply_controlled_unitary(state, spec.n_env, i, id, u1);
  }
  return state;
}

PureState analytic_cmaybe_state(const CMaybeSpec& spec) {
  spec.validate();
  if (spec.mode == CMaybeSpec::Mode::Haar) {
    throw std::invalid_argument("analytic_cmaybe_state: no closed form in haar mode");
  }
  const double gamma = (spec.mode == CMaybeSpec::Mode::Ideal) ? 1.0 : spec.gamma;
  const SubsystemLayout layout = cmaybe_layout(spec);
  const std::size_t env_dim = std::size_t{1} << spec.n_env;
  const std::size_t sys_stride = env_dim;  // system is the last factor

  Vector amp = Vector::Zero(layout.total_dim());
  amp[0] = std::sqrt(1.0 - spec.p);
  const Complex branch1 = std::sqrt(spec.p) * std::polar(1.0, spec.phi);
  const double a0 = std::sqrt(1.0 - gamma);  // <0|gamma_i>
  const double a1 = std::sqrt(gamma);        // <1|gamma_i>
  for (std::size_t e = 0; e < env_dim; ++e) {
    double w = 1.0;
    for (int q = 0; q < spec.n_env; ++q) {
      w *= ((e >> q) & 1u) ? a1 : a0;
      if (w == 0.0) break;
    }
    if (w != 0.0) amp[sys_stride + e] = branch1 * w;
  }
  return PureState{amp, layout};
}

GeometricState limiting_geometric_state(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must lie in [0, 1]");
  GeometricState out;
  out.system_dim = 2;
  Vector zero(2), one(2);
  zero << 1.0, 0.0;
  one << 0.0, 1.0;
  if (1.0 - p >= kWeightPruneThreshold) {
    out.points.push_back(GeometricPoint{1.0 - p, zero, 0, 0});
  }
  if (p >= kWeightPruneThreshold) {
    out.points.push_back(GeometricPoint{p, one, 1, 1});
  }
  return out;
}

Matrix haar_random_su2(RandomStream& rng) { return haar_random_unitary(2, rng); }

PureState build_haar_cmaybe_state(const CMaybeSpec& spec) {
  spec.validate();
  if (spec.mode != CMaybeSpec::Mode::Haar) {
    throw std::invalid_argument("build_haar_cmaybe_state: spec is not in haar mode");
  }
  const SubsystemLayout layout = cmaybe_layout(spec);
  PureState state{initial_amplitudes(spec, layout), layout};
  RandomStream rng(derive_seed(spec.seed, "haar-cmaybe", 0));
  for (int i = 0; i < spec.n_env; ++i) {
    const Eigen::Matrix2cd u0 = haar_random_su2(rng);
    const Eigen::Matrix2cd u1 = haar_random_su2(rng);
    state = apply_controlled_unitary(state, spec.n_env, i, u0, u1);
  }
  return state;
}

PureState build_model_state(const CMaybeSpec& spec) {
  return spec.mode == CMaybeSpec::Mode::Haar ? build_haar_cmaybe_state(spec)
                                             : build_cmaybe_state(spec);
}

}  // namespace qdarwin
