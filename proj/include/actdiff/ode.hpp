#pragma once

#include <Eigen/Core>
#include <functional>

namespace actdiff {

struct OdeOptions {
  double abs_tol = 1e-6;
  double rel_tol = 1e-6;
  double initial_step = 0.0;  // 0 -> (s1 - s0)/100
  double min_step = 1e-8;     // underflow below this aborts
  double safety = 0.9;
};

using OdeRhs = std::function<void(double s, const Eigen::VectorXd& y, Eigen::VectorXd& dyds)>;

/// Dormand-Prince 5(4) with a PI step-size controller. Integrates y' = f(s, y)
/// from s0 to s1 (s1 > s0) and returns y(s1). Throws NumericError on step
/// underflow or non-finite state.
Eigen::VectorXd integrate_rk45(const OdeRhs& f, Eigen::VectorXd y0, double s0, double s1,
                               const OdeOptions& opts = {});

}  // namespace actdiff
