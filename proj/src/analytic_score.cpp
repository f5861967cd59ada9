#include "actdiff/analytic_score.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace actdiff {
namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // 0.5 ln(2 pi)

double clamp_time(const DiffusionParams& params, double t) {
  if (!std::isfinite(t) || t < 0.0) throw InvalidInputError("score: t must be finite and >= 0");
  return std::max(t, 1e-8 * params.t_f);
}

// Sum in ascending value order: invariant under permutations of the inputs.
double sorted_sum(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

// log(sum_a exp(logw[a])) with the max as pivot, permutation-invariant.
double log_sum_exp(const std::vector<double>& logw) {
  const double m = *std::max_element(logw.begin(), logw.end());
  std::vector<double> terms(logw.size());
  for (std::size_t i = 0; i < logw.size(); ++i) terms[i] = std::exp(logw[i] - m);
  return m + std::log(sorted_sum(terms));
}

//

void check_state(const GaussianMixture& mix, const Eigen::VectorXd& x) {
  mix.validate();
  if (x.size() != mix.dim()) throw InvalidInputError("score: state dimension mismatch");
  if (!x.allFinite()) throw InvalidInputError("score: non-finite state");
}

}  // namespace

ActiveEvolvedCoeffs active_evolved_coeffs(const GaussianMixture& mix, double t,
                                          const DiffusionParams& params) {
  if (!params.is_active()) throw InvalidInputError("active_evolved_coeffs: passive params");
  const KernelMoments m = kernel_moments(params, t);
  const double g = params.T_a / params.tau;  // eta0 prior variance
  ActiveEvolvedCoeffs c;
  c.a = m.a;
  c.k1 = m.b * m.b * g + m.m22;
  c.k2 = m.bcoef * m.b * g + m.m12;
  c.k3 = (m.bcoef * m.bcoef * g + m.m11) + (m.a * m.a) * mix.variances.array();
  c.deff = c.k1 * c.k3.array() - c.k2 * c.k2;
  return c;
}

double passive_log_density(const GaussianMixture& mix, const Eigen::VectorXd& x,
                           double t, const DiffusionParams& params) {
  check_state(mix, x);
  t = clamp_time(params, t);
  const KernelMoments km = kernel_moments(params, t);
  const double delta = km.m11;
  const int K = mix.peaks(), d = mix.dim();
  std::vector<double> logw(K);
  for (int a = 0; a < K; ++a) {
    double lw = std::log(mix.weights[a]);
    for (int j = 0; j < d; ++j) {
      const double v = delta + km.a * km.a * mix.variances(a, j);
      const double r = x[j] - km.a * mix.means(a, j);
      lw += -0.5 * std::log(v) - kHalfLog2Pi - r * r / (2.0 * v);
    }
    logw[a] = lw;
  }
  return log_sum_exp(logw);
}

Eigen::VectorXd passive_score(const GaussianMixture& mix, const Eigen::VectorXd& x,
                              double t, const DiffusionParams& params) {
  check_state(mix, x);
  t = clamp_time(params, t);
  const KernelMoments km = kernel_moments(params, t);
  const double delta = km.m11;
  const int K = mix.peaks(), d = mix.dim();
  std::vector<double> logw(K);
  for (int a = 0; a < K; ++a) {
    double lw = std::log(mix.weights[a]);
    for (int j = 0; j < d; ++j) {
      const double v = delta + km.a * km.a * mix.variances(a, j);
      const double r = x[j] - km.a * mix.means(a, j);
      lw += -0.5 * std::log(v) - r * r / (2.0 * v);
    }
    logw[a] = lw;
  }
  const double pivot = *std::max_element(logw.begin(), logw.end());
  std::vector<double> w(K);
  double norm = 0.0;
  {
    std::vector<double> terms(K);
    for (int a = 0; a < K; ++a) terms[a] = std::exp(logw[a] - pivot);
    w = terms;
    norm = sorted_sum(terms);
  }
  Eigen::VectorXd s(d);
  std::vector<double> terms(K);
  for (int j = 0; j < d; ++j) {
    for (int a = 0; a < K; ++a) {
      const double v = delta + km.a * km.a * mix.variances(a, j);
      terms[a] = -w[a] * (x[j] - km.a * mix.means(a, j)) / v;
    }
    s[j] = sorted_sum(terms) / norm;
  }
  return s;
}

namespace {

// Shared core for the active joint density/score: per-peak log weights and
// responsibilities at one state.
struct ActiveEval {
  std::vector<double> logw;  // with normalization constants
  double a;
  double k1, k2;
  const Eigen::MatrixXd* k3;
  const Eigen::MatrixXd* deff;
};

void active_log_weights(const GaussianMixture& mix, const ActiveEvolvedCoeffs& c,
                        const Eigen::VectorXd& x, const Eigen::VectorXd& eta,
                        std::vector<double>& logw) {
  const int K = mix.peaks(), d = mix.dim();
  logw.resize(K);
  for (int a = 0; a < K; ++a) {
    double lw = std::log(mix.weights[a]);
    for (int j = 0; j < d; ++j) {
      const double xt = x[j] - c.a * mix.means(a, j);
      const double de = c.deff(a, j);
      const double q = c.k1 * xt * xt - 2.0 * c.k2 * xt * eta[j] + c.k3(a, j) * eta[j] * eta[j];
      lw += -0.5 * std::log(de) - 2.0 * kHalfLog2Pi - q / (2.0 * de);
    }
    logw[a] = lw;
  }
}

}  // namespace

double active_joint_log_density(const GaussianMixture& mix, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& eta, double t,
                                const DiffusionParams& params) {
  check_state(mix, x);
  if (eta.size() != x.size() || !eta.allFinite())
    throw InvalidInputError("active_joint_log_density: bad eta");
  t = clamp_time(params, t);
  const ActiveEvolvedCoeffs c = active_evolved_coeffs(mix, t, params);
  std::vector<double> logw;
  active_log_weights(mix, c, x, eta, logw);
  return log_sum_exp(logw);
}

ActiveScorePair active_joint_score(const GaussianMixture& mix, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& eta, double t,
                                   const DiffusionParams& params) {
  check_state(mix, x);
  if (eta.size() != x.size() || !eta.allFinite())
    throw InvalidInputError("active_joint_score: bad eta");
  t = clamp_time(params, t);
  const ActiveEvolvedCoeffs c = active_evolved_coeffs(mix, t, params);
  const int K = mix.peaks(), d = mix.dim();
  std::vector<double> logw;
  active_log_weights(mix, c, x, eta, logw);
  const double pivot = *std::max_element(logw.begin(), logw.end());
  std::vector<double> w(K), terms(K);
  for (int a = 0; a < K; ++a) w[a] = std::exp(logw[a] - pivot);
  terms = w;
  const double norm = sorted_sum(terms);

  ActiveScorePair s;
  s.f_x.resize(d);
  s.f_eta.resize(d);
  std::vector<double> tx(K), te(K);
  for (int j = 0; j < d; ++j) {
    for (int a = 0; a < K; ++a) {
      const double xt = x[j] - c.a * mix.means(a, j);
      const double de = c.deff(a, j);
      tx[a] = -w[a] * (c.k1 * xt - c.k2 * eta[j]) / de;
      te[a] = -w[a] * (c.k3(a, j) * eta[j] - c.k2 * xt) / de;
    }
    s.f_x[j] = sorted_sum(tx) / norm;
    s.f_eta[j] = sorted_sum(te) / norm;
  }
  return s;
}

void passive_score_batch(const GaussianMixture& mix, const Eigen::MatrixXd& x, double t,
                         const DiffusionParams& params, Eigen::MatrixXd& fx) {
  mix.validate();
  t = clamp_time(params, t);
  const KernelMoments km = kernel_moments(params, t);
  const double delta = km.m11;
  const int K = mix.peaks(), d = mix.dim();
  const auto n = x.rows();
  fx.resize(n, d);

  Eigen::VectorXd inv_v(K * d), log_v(K);
  Eigen::MatrixXd amu = km.a * mix.means;
  for (int a = 0; a < K; ++a) {
    double lv = 0.0;
    for (int j = 0; j < d; ++j) {
      const double v = delta + km.a * km.a * mix.variances(a, j);
      inv_v[a * d + j] = 1.0 / v;
      lv += std::log(v);
    }
    log_v[a] = lv;
  }
  Eigen::VectorXd logw(K);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int a = 0; a < K; ++a) {
      double q = 0.0;
      for (int j = 0; j < d; ++j) {
        const double r = x(i, j) - amu(a, j);
        q += r * r * inv_v[a * d + j];
      }
      logw[a] = std::log(mix.weights[a]) - 0.5 * log_v[a] - 0.5 * q;
    }
    const double pivot = logw.maxCoeff();
    double norm = 0.0;
    for (int a = 0; a < K; ++a) {
      logw[a] = std::exp(logw[a] - pivot);
      norm += logw[a];
    }
    for (int j = 0; j < d; ++j) {
      double acc = 0.0;
      for (int a = 0; a < K; ++a)
        acc -= logw[a] * (x(i, j) - amu(a, j)) * inv_v[a * d + j];
      fx(i, j) = acc / norm;
    }
  }
}

void active_joint_score_batch(const GaussianMixture& mix, const Eigen::MatrixXd& x,
                              const Eigen::MatrixXd& eta, double t,
                              const DiffusionParams& params, Eigen::MatrixXd& fx,
                              Eigen::MatrixXd& feta) {
  mix.validate();
  t = clamp_time(params, t);
  const ActiveEvolvedCoeffs c = active_evolved_coeffs(mix, t, params);
  const int K = mix.peaks(), d = mix.dim();
  const auto n = x.rows();
  fx.resize(n, d);
  feta.resize(n, d);

  Eigen::MatrixXd inv_de = c.deff.cwiseInverse();
  Eigen::VectorXd log_de(K);
  for (int a = 0; a < K; ++a) {
    double s = 0.0;
    for (int j = 0; j < d; ++j) s += std::log(c.deff(a, j));
    log_de[a] = s;
  }
  Eigen::MatrixXd amu = c.a * mix.means;
  Eigen::VectorXd logw(K);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int a = 0; a < K; ++a) {
      double q = 0.0;
      for (int j = 0; j < d; ++j) {
        const double xt = x(i, j) - amu(a, j);
        q += (c.k1 * xt * xt - 2.0 * c.k2 * xt * eta(i, j) + c.k3(a, j) * eta(i, j) * eta(i, j)) *
             inv_de(a, j);
      }
      logw[a] = std::log(mix.weights[a]) - 0.5 * log_de[a] - 0.5 * q;
    }
    const double pivot = logw.maxCoeff();
    double norm = 0.0;
    for (int a = 0; a < K; ++a) {
      logw[a] = std::exp(logw[a] - pivot);
      norm += logw[a];
    }
    for (int j = 0; j < d; ++j) {
      double ax = 0.0, ae = 0.0;
      for (int a = 0; a < K; ++a) {
        const double xt = x(i, j) - amu(a, j);
        ax -= logw[a] * (c.k1 * xt - c.k2 * eta(i, j)) * inv_de(a, j);
        ae -= logw[a] * (c.k3(a, j) * eta(i, j) - c.k2 * xt) * inv_de(a, j);
      }
      fx(i, j) = ax / norm;
      feta(i, j) = ae / norm;
    }
  }
}

}  // namespace actdiff
