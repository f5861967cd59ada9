#pragma once

#include <Eigen/Core>

#include "actdiff/params.hpp"

namespace actdiff {

/// Time-dependent coefficients of the Gaussian perturbation kernel.
///
/// a = e^{-kt}, b = e^{-t/tau}, bcoef = (b - a)/(k - 1/tau); m11/m12/m22 are
/// the covariance entries of one (x_i, eta_i) pair conditioned on the initial
/// state. For the passive process only a and m11 (the usual Delta_t) are
/// nonzero.
struct KernelMoments {
  double a = 1.0;
  double b = 1.0;
  double bcoef = 0.0;
  double m11 = 0.0;
  double m12 = 0.0;
  double m22 = 0.0;

  Eigen::Matrix2d cov() const {
    Eigen::Matrix2d c;
    c << m11, m12, m12, m22;
    return c;
  }
};

/// Kernel covariance/mean coefficients at forward time t, conditioned on
/// (x0, eta0). Near the degenerate line k = 1/tau the direct formulas divide
/// by powers of (k - 1/tau); a series branch takes over there (see kernel.cpp).
KernelMoments kernel_moments(const DiffusionParams& params, double t);

/// t -> infinity limit of kernel_moments (the stationary joint Gaussian).
KernelMoments stationary_moments(const DiffusionParams& params);

/// Kernel conditioned on x0 only: eta0 is marginalized over its stationary
/// prior N(0, T_a/tau). Mean is (a x0, 0); covariance gains the eta0 terms.
/// This is the kernel hybrid score matching trains against.
KernelMoments marginal_moments_x0(const DiffusionParams& params, double t);

struct MarginalKernelX0 {
  Eigen::VectorXd mean_x;
  Eigen::VectorXd mean_eta;  // identically zero
  KernelMoments cov;
};

MarginalKernelX0 marginal_kernel_x0(const DiffusionParams& params, double t,
                                    const Eigen::VectorXd& x0);

/// Passive smearing variance Delta_t = (T/k)(1 - e^{-2kt}).
double passive_delta(const DiffusionParams& params, double t);

}  // namespace actdiff
