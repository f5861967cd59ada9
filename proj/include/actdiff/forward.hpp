#pragma once

#include <vector>

#include "actdiff/kernel.hpp"
#include "actdiff/params.hpp"
#include "actdiff/rng.hpp"

namespace actdiff {

/// Euler-Maruyama path of the forward SDE from t = 0 to t = t_f.
/// For the active process eta0 is drawn from its stationary prior
/// N(0, (T_a/tau) I). States are recorded every `record_stride` steps
/// (and always at t = 0 and t = t_f).
std::vector<JointState> forward_sample_path(const DiffusionParams& params,
                                            const Eigen::VectorXd& x0, double dt,
                                            CounterRng& rng, int record_stride = 1);

/// Exact one-shot draw from the perturbation kernel at time t, conditioned on
/// x0 with eta0 marginalized (agrees in distribution with the pathwise
/// simulation at time t).
JointState forward_kernel_sample(const DiffusionParams& params,
                                 const Eigen::VectorXd& x0, double t, CounterRng& rng);

/// Draw from the t -> infinity stationary Gaussian; the initial condition of
/// the reverse process. Passive: x ~ N(0, T/k). Active: (x, eta) pairs from
/// the stationary joint covariance, per dimension.
JointState prior_sample(const DiffusionParams& params, int dim, CounterRng& rng);

/// Reverse-time drift at reverse time s = t_f - t. The diffusion amplitudes
/// are supplied separately (reverse_noise_amp_*) and added by the integrator.
///
/// active:  dx/ds = k x - eta + 2 T_p F_x,  deta/ds = eta/tau + (2 T_a/tau^2) F_eta
/// passive: dx/ds = k x + 2 T F_x
struct ReverseDrift {
  Eigen::VectorXd dx_ds;
  Eigen::VectorXd deta_ds;
};

ReverseDrift reverse_drift(const DiffusionParams& params, const JointState& state,
                           const Eigen::VectorXd& score_x, const Eigen::VectorXd& score_eta);

double reverse_noise_amp_x(const DiffusionParams& params);    // sqrt(2 T_p) (passive: sqrt(2 T))
double reverse_noise_amp_eta(const DiffusionParams& params);  // sqrt(2 T_a)/tau

/// Cholesky factor entries of a 2x2 kernel covariance; used for exact
/// Gaussian draws. Throws if the covariance is not PSD beyond roundoff.
struct Chol2 {
  double l11, l21, l22;
};
Chol2 cholesky2(const KernelMoments& m);

}  // namespace actdiff
