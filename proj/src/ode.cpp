#include "actdiff/ode.hpp"

#include <algorithm>
#include <cmath>

#include "actdiff/errors.hpp"

namespace actdiff {

Eigen::VectorXd integrate_rk45(const OdeRhs& f, Eigen::VectorXd y, double s0, double s1,
                               const OdeOptions& opts) {
  if (!(s1 > s0)) return y;

  // Dormand-Prince coefficients
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                      a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const auto n = y.size();
  Eigen::VectorXd k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), yt(n), ynew(n), err(n);

  double s = s0;
  double h = opts.initial_step > 0.0 ? opts.initial_step : (s1 - s0) / 100.0;
  double err_prev = 1.0;
  f(s, y, k1);  // FSAL
  const int max_steps = 10'000'000;
  for (int step = 0; step < max_steps && s < s1; ++step) {
    h = std::min(h, s1 - s);
    if (h < opts.min_step) throw NumericError("integrate_rk45: step size underflow");

    yt = y + h * a21 * k1;
    f(s + c2 * h, yt, k2);
    yt = y + h * (a31 * k1 + a32 * k2);
    f(s + c3 * h, yt, k3);
    yt = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    f(s + c4 * h, yt, k4);
    yt = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    f(s + c5 * h, yt, k5);
    yt = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    f(s + h, yt, k6);
    ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    f(s + h, ynew, k7);
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    if (!ynew.allFinite()) throw NumericError("integrate_rk45: non-finite state");
    double norm = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double sc = opts.abs_tol + opts.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      norm += (err[i] / sc) * (err[i] / sc);
    }
    norm = std::sqrt(norm / static_cast<double>(n));

    if (norm <= 1.0) {
      s += h;
      y.swap(ynew);
      k1.swap(k7);
      // PI controller (beta = 0.08), clamped growth
      const double fac = opts.safety * std::pow(std::max(norm, 1e-10), -0.7 / 5.0) *
                         std::pow(err_prev, 0.4 / 5.0);
      h *= std::clamp(fac, 0.2, 5.0);
      err_prev = std::max(norm, 1e-10);
    } else {
      h *= std::max(0.2, opts.safety * std::pow(norm, -1.0 / 5.0));
    }
  }
  if (s < s1) throw NumericError("integrate_rk45: max step count exceeded");
  return y;
}

}  // namespace actdiff
