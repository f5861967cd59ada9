#include "actdiff/kernel.hpp"

#include <algorithm>
#include <cmath>

namespace actdiff {
namespace {

// expm1(z)/z, continuous through z = 0.
double exprel(double z) {
  if (std::abs(z) < 1e-8) return 1.0 + 0.5 * z + z * z / 6.0;
  return std::expm1(z) / z;
}

// G_m(c, t) = int_0^t w^m e^{-c w} dw. Series for small c*t (the recurrence
// subtracts nearly equal terms there), upward recurrence otherwise.
void g_integrals(double c, double t, int mmax, double* g) {
  const double ct = c * t;
  if (ct < 0.5) {
    for (int m = 0; m <= mmax; ++m) {
      double term = 1.0 / (m + 1);
      double sum = term;
      double num = 1.0;
      for (int j = 1; j < 30; ++j) {
        num *= -ct / j;
        const double tj = num / (m + j + 1);
        sum += tj;
        if (std::abs(tj) < 1e-18 * std::abs(sum)) break;
      }
      g[m] = std::pow(t, m + 1) * sum;
    }
    return;
  }
  const double ect = std::exp(-ct);
  g[0] = -std::expm1(-ct) / c;
  double tm = 1.0;
  for (int m = 1; m <= mmax; ++m) {
    tm *= t;
    g[m] = (m * g[m - 1] - tm * ect) / c;
  }
}

struct ActiveMoments {
  double bcoef, m11a, m12;  // m11a excludes the T_p term
};

// Direct evaluation of Eqs. for m11/m12 away from the degenerate line.
ActiveMoments active_moments_direct(double k, double tau, double Ta, double t) {
  const double a = std::exp(-k * t);
  const double b = std::exp(-t / tau);
  const double c = k + 1.0 / tau;
  const double km = k - 1.0 / tau;
  ActiveMoments r;
  r.bcoef = (b - a) / km;
  r.m12 = Ta / (tau * c * km) * (k * (1.0 - b * b) - (1.0 / tau) * (1.0 + b * b - 2.0 * a * b));
  r.m11a = Ta / (tau * tau) *
           (tau / (k * c) + (4.0 * a * b / c - b * b * tau - a * a / k) / (km * km));
  return r;
}

// Series in km = k - 1/tau, built from the cancellation-free integral forms
//   m11a = (2 Ta/tau^2) int w^2 e^{-c w} sinhc^2(km w / 2) dw
//   m12  = (2 Ta/tau^2) int w e^{-2w/tau} exprel(-km w) dw.
ActiveMoments active_moments_series(double k, double tau, double Ta, double t) {
  const double c = k + 1.0 / tau;
  const double km = k - 1.0 / tau;
  const double pref = 2.0 * Ta / (tau * tau);
  ActiveMoments r;
  r.bcoef = t * std::exp(-k * t) * exprel(km * t);

  // sinhc^2(z) = 1 + z^2/3 + 2 z^4/45 + z^6/315
  double g[9];
  g_integrals(c, t, 8, g);
  const double z2 = km * km / 4.0;
  r.m11a = pref * (g[2] + z2 * (g[4] / 3.0 + z2 * (2.0 * g[6] / 45.0 + z2 * g[8] / 315.0)));

  // exprel(-z) = sum (-z)^n / (n+1)!
  double h[9];
  g_integrals(2.0 / tau, t, 8, h);
  double sum = 0.0, coef = 1.0;
  for (int n = 0; n <= 7; ++n) {
    sum += coef * h[n + 1];
    coef *= -km / (n + 2);
  }
  r.m12 = pref * sum;
  return r;
}

}  // namespace

double passive_delta(const DiffusionParams& params, double t) {
  return -params.T_p / params.k * std::expm1(-2.0 * params.k * t);
}

KernelMoments kernel_moments(const DiffusionParams& params, double t) {
  params.validate();
  if (!std::isfinite(t) || t < 0.0) throw InvalidInputError("kernel_moments: t must be finite and >= 0");

  KernelMoments m;
  m.a = std::exp(-params.k * t);
  if (!params.is_active()) {
    m.m11 = passive_delta(params, t);
    m.b = 0.0;
    return m;
  }

  const double k = params.k, tau = params.tau;
  m.b = std::exp(-t / tau);
  m.m22 = -params.T_a / tau * std::expm1(-2.0 * t / tau);

  // The direct m11 expression cancels to O(km^2) when km*t is small, which
  // costs ~1e-16/(km t)^2 in relative accuracy; switch to the series branch
  // early enough that both branches carry >= 1e-10 accuracy at the boundary.
  const double km = k - 1.0 / tau;
  const double c = k + 1.0 / tau;
  const double scale = std::min(t, 4.0 / c);
  const ActiveMoments am = (std::abs(km) * scale <= 0.1)
                               ? active_moments_series(k, tau, params.T_a, t)
                               : active_moments_direct(k, tau, params.T_a, t);
  m.bcoef = am.bcoef;
  m.m12 = am.m12;
  m.m11 = am.m11a - params.T_p / k * std::expm1(-2.0 * k * t);
  return m;
}

KernelMoments stationary_moments(const DiffusionParams& params) {
  params.validate();
  KernelMoments m;
  m.a = 0.0;
  m.b = 0.0;
  m.bcoef = 0.0;
  if (!params.is_active()) {
    m.m11 = params.T_p / params.k;
    return m;
  }
  const double c = params.k + 1.0 / params.tau;
  m.m22 = params.T_a / params.tau;
  m.m12 = m.m22 / c;
  m.m11 = (m.m12 + params.T_p) / params.k;
  return m;
}

KernelMoments marginal_moments_x0(const DiffusionParams& params, double t) {
  KernelMoments m = kernel_moments(params, t);
  if (!params.is_active()) return m;
  const double g = params.T_a / params.tau;  // Var(eta0) under the stationary prior
  m.m11 += g * m.bcoef * m.bcoef;
  m.m12 += g * m.bcoef * m.b;
  m.m22 += g * m.b * m.b;
  return m;
}

MarginalKernelX0 marginal_kernel_x0(const DiffusionParams& params, double t,
                                    const Eigen::VectorXd& x0) {
  if (!x0.allFinite()) throw InvalidInputError("marginal_kernel_x0: non-finite x0");
  MarginalKernelX0 r;
  r.cov = marginal_moments_x0(params, t);
  r.mean_x = r.cov.a * x0;
  r.mean_eta = Eigen::VectorXd::Zero(x0.size());
  return r;
}

}  // namespace actdiff
