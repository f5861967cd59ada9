#pragma once

#include <Eigen/Core>

#include "actdiff/kernel.hpp"
#include "actdiff/mixture.hpp"
#include "actdiff/params.hpp"

namespace actdiff {

/// Closed-form scores of a Gaussian-mixture target evolved by the forward
/// process. These make the reverse process exact (no network needed).
///
/// Evaluation times are clamped to >= 1e-8 * t_f: at exactly t = 0 the
/// passive kernel is a point mass and the score degenerates. All mixture
/// sums run through log-sum-exp with value-sorted accumulation so that a
/// joint permutation of (weights, means, variances) is bit-neutral.

struct ActiveScorePair {
  Eigen::VectorXd f_x;    // d ln P / d x
  Eigen::VectorXd f_eta;  // d ln P / d eta
};

double passive_log_density(const GaussianMixture& mix, const Eigen::VectorXd& x,
                           double t, const DiffusionParams& params);

Eigen::VectorXd passive_score(const GaussianMixture& mix, const Eigen::VectorXd& x,
                              double t, const DiffusionParams& params);

double active_joint_log_density(const GaussianMixture& mix, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& eta, double t,
                                const DiffusionParams& params);

ActiveScorePair active_joint_score(const GaussianMixture& mix, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& eta, double t,
                                   const DiffusionParams& params);

/// Batched variants; states are rows. Feta/Fx are resized by the callee.
void passive_score_batch(const GaussianMixture& mix, const Eigen::MatrixXd& x, double t,
                         const DiffusionParams& params, Eigen::MatrixXd& fx);

void active_joint_score_batch(const GaussianMixture& mix, const Eigen::MatrixXd& x,
                              const Eigen::MatrixXd& eta, double t,
                              const DiffusionParams& params, Eigen::MatrixXd& fx,
                              Eigen::MatrixXd& feta);

/// Per-peak quadratic coefficients of the evolved active joint density
/// (the evolved per-dimension 2x2 covariance is [[k3, k2], [k2, k1]]).
struct ActiveEvolvedCoeffs {
  double k1;             // Var(eta) channel
  double k2;             // Cov(x, eta)
  Eigen::MatrixXd k3;    // K x d, Var(x) channel (peak dependent)
  Eigen::MatrixXd deff;  // K x d, k1*k3 - k2^2
  double a;              // kernel mean coefficient e^{-kt}
};

ActiveEvolvedCoeffs active_evolved_coeffs(const GaussianMixture& mix, double t,
                                          const DiffusionParams& params);

}  // namespace actdiff
