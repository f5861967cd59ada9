#include "actdiff/forward.hpp"

#include <cmath>

#include "actdiff/errors.hpp"

namespace actdiff {

Chol2 cholesky2(const KernelMoments& m) {
  const double tr = m.m11 + m.m22;
  if (m.m11 < -1e-12 * tr || m.m22 < -1e-12 * tr)
    throw NumericError("cholesky2: negative diagonal in kernel covariance");
  Chol2 c;
  c.l11 = std::sqrt(std::max(m.m11, 0.0));
  c.l21 = c.l11 > 0.0 ? m.m12 / c.l11 : 0.0;
  c.l22 = std::sqrt(std::max(m.m22 - c.l21 * c.l21, 0.0));
  return c;
}

std::vector<JointState> forward_sample_path(const DiffusionParams& params,
                                            const Eigen::VectorXd& x0, double dt,
                                            CounterRng& rng, int record_stride) {
  params.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidInputError("forward_sample_path: dt must be > 0");
  if (!x0.allFinite()) throw InvalidInputError("forward_sample_path: non-finite x0");
  if (record_stride < 1) record_stride = 1;

  const int d = static_cast<int>(x0.size());
  const bool active = params.is_active();
  const auto steps = static_cast<long>(std::lround(params.t_f / dt));

  JointState s;
  s.x = x0;
  s.t = 0.0;
  if (active) {
    const double eta_sd = std::sqrt(params.T_a / params.tau);
    s.eta.resize(d);
    for (int i = 0; i < d; ++i) s.eta[i] = eta_sd * rng.normal();
  } else {
    s.eta.resize(0);
  }

  std::vector<JointState> path;
  path.reserve(static_cast<std::size_t>(steps / record_stride) + 2);
  path.push_back(s);

  const double amp_x = std::sqrt(2.0 * params.T_p * dt);
  const double amp_e = active ? std::sqrt(2.0 * params.T_a * dt) / params.tau : 0.0;
  for (long n = 0; n < steps; ++n) {
    if (active) {
      for (int i = 0; i < d; ++i) {
        const double xi1 = amp_x > 0.0 ? amp_x * rng.normal() : 0.0;
        const double xi2 = amp_e > 0.0 ? amp_e * rng.normal() : 0.0;
        s.x[i] += (-params.k * s.x[i] + s.eta[i]) * dt + xi1;
        s.eta[i] += -s.eta[i] / params.tau * dt + xi2;
      }
    } else {
      for (int i = 0; i < d; ++i)
        s.x[i] += -params.k * s.x[i] * dt + amp_x * rng.normal();
    }
    s.t = (n + 1 == steps) ? params.t_f : (n + 1) * dt;
    if ((n + 1) % record_stride == 0 || n + 1 == steps) path.push_back(s);
  }
  return path;
}

JointState forward_kernel_sample(const DiffusionParams& params,
                                 const Eigen::VectorXd& x0, double t, CounterRng& rng) {
  const KernelMoments m = marginal_moments_x0(params, t);
  const int d = static_cast<int>(x0.size());
  JointState s;
  s.t = t;
  s.x.resize(d);
  if (!params.is_active()) {
    const double sd = std::sqrt(m.m11);
    for (int i = 0; i < d; ++i) s.x[i] = m.a * x0[i] + sd * rng.normal();
    s.eta.resize(0);
    return s;
  }
  const Chol2 L = cholesky2(m);
  s.eta.resize(d);
  for (int i = 0; i < d; ++i) {
    const double z1 = rng.normal();
    const double z2 = rng.normal();
    s.x[i] = m.a * x0[i] + L.l11 * z1;
    s.eta[i] = L.l21 * z1 + L.l22 * z2;
  }
  return s;
}

JointState prior_sample(const DiffusionParams& params, int dim, CounterRng& rng) {
  params.validate();
  if (dim < 1) throw InvalidInputError("prior_sample: dim must be >= 1");
  const KernelMoments m = stationary_moments(params);
  JointState s;
  s.t = params.t_f;
  s.x.resize(dim);
  if (!params.is_active()) {
    const double sd = std::sqrt(m.m11);
    for (int i = 0; i < dim; ++i) s.x[i] = sd * rng.normal();
    s.eta.resize(0);
    return s;
  }
  const Chol2 L = cholesky2(m);
  s.eta.resize(dim);
  for (int i = 0; i < dim; ++i) {
    const double z1 = rng.normal();
    const double z2 = rng.normal();
    s.x[i] = L.l11 * z1;
    s.eta[i] = L.l21 * z1 + L.l22 * z2;
  }
  return s;
}

ReverseDrift reverse_drift(const DiffusionParams& params, const JointState& state,
                           const Eigen::VectorXd& score_x, const Eigen::VectorXd& score_eta) {
  const int d = static_cast<int>(state.x.size());
  ReverseDrift r;
  if (!params.is_active()) {
    if (score_x.size() != d) throw InvalidInputError("reverse_drift: score_x dimension mismatch");
    r.dx_ds = params.k * state.x + 2.0 * params.T_p * score_x;
    r.deta_ds.resize(0);
    return r;
  }
  if (state.eta.size() != d) throw InvalidInputError("reverse_drift: state eta dimension mismatch");
  if (score_eta.size() != d) throw InvalidInputError("reverse_drift: score_eta dimension mismatch");
  r.dx_ds = params.k * state.x - state.eta;
  if (params.T_p > 0.0) {
    if (score_x.size() != d) throw InvalidInputError("reverse_drift: score_x dimension mismatch");
    r.dx_ds += 2.0 * params.T_p * score_x;
  }
  r.deta_ds = state.eta / params.tau + (2.0 * params.T_a / (params.tau * params.tau)) * score_eta;
  return r;
}

double reverse_noise_amp_x(const DiffusionParams& params) { return std::sqrt(2.0 * params.T_p); }

double reverse_noise_amp_eta(const DiffusionParams& params) {
  return params.is_active() ? std::sqrt(2.0 * params.T_a) / params.tau : 0.0;
}

}  // namespace actdiff
