#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "actdiff/params.hpp"
#include "actdiff/rng.hpp"
#include "actdiff/score_source.hpp"

namespace actdiff {

enum class SamplerKind { euler_maruyama, ode_adaptive };

struct SamplerConfig {
  SamplerKind kind = SamplerKind::euler_maruyama;
  int n_steps = 500;        // EM: dt = t_f / n_steps
  bool denoise_last = false;
  double ode_abs_tol = 1e-6;
  double ode_rel_tol = 1e-6;
  std::uint64_t seed = 0;
  int n_samples = 1;
  int threads = 1;
  bool learned_score = false;  // floors the last score evaluation at 1e-3 t_f

  void validate() const {
    if (n_steps < 1) throw InvalidInputError("SamplerConfig: n_steps must be >= 1");
    if (!(ode_abs_tol > 0.0) || !(ode_rel_tol > 0.0))
      throw InvalidInputError("SamplerConfig: tolerances must be > 0");
    if (n_samples < 0) throw InvalidInputError("SamplerConfig: n_samples must be >= 0");
  }
};

struct SampleSet {
  Eigen::MatrixXd x;    // n_samples x d
  Eigen::MatrixXd eta;  // n_samples x d (empty for passive)
};

/// Fixed-step Euler-Maruyama integration of the reverse SDE. Chains start
/// from prior_sample at t = t_f; scores are evaluated at t = t_f, t_f - dt,
/// ..., down to t = dt (learned scores: down to max(dt, 1e-3 t_f)), and the
/// final step lands at t = 0 with its noise dropped when denoise_last is set.
/// Chain i draws from stream (seed, chain i): results are independent of
/// batching and thread count.
SampleSet sample_reverse_sde(const ScoreSource& score, const DiffusionParams& params,
                             const SamplerConfig& config);

/// Probability-flow ODE companion of the reverse SDE (score coefficient
/// halved, no noise), integrated per chain with the adaptive RK45 pair.
/// Shares the SDE sampler's time marginals in distribution.
SampleSet sample_probability_flow(const ScoreSource& score, const DiffusionParams& params,
                                  const SamplerConfig& config);

/// Reverse-SDE sampling across a grid of step sizes; each sample set is
/// handed to `metrics_hook` and the named values are tabulated per dt.
struct DtSweepRow {
  double dt = 0.0;
  int n_steps = 0;
  std::map<std::string, double> metrics;
};

std::vector<DtSweepRow> dt_sweep(
    const ScoreSource& score, const DiffusionParams& params, const std::vector<double>& dts,
    const SamplerConfig& base,
    const std::function<std::map<std::string, double>(const Eigen::MatrixXd&)>& metrics_hook);

/// Sign cutoff at 0 mapping sampled lattices back to spins in {-1, +1}.
Eigen::MatrixXi discretize_spins(const Eigen::MatrixXd& x);

}  // namespace actdiff
