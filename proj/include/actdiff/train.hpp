#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "actdiff/kernel.hpp"
#include "actdiff/mixture.hpp"
#include "actdiff/net.hpp"
#include "actdiff/params.hpp"
#include "actdiff/rng.hpp"

namespace actdiff {

/// Source of clean data points x0 for training batches.
class TrainingDataSource {
 public:
  virtual ~TrainingDataSource() = default;
  virtual int dim() const = 0;
  virtual void draw(int n, CounterRng& rng, Eigen::MatrixXd& out) const = 0;
};

class MixtureDataSource final : public TrainingDataSource {
 public:
  explicit MixtureDataSource(GaussianMixture mix) : mix_(std::move(mix)) { mix_.validate(); }
  int dim() const override { return mix_.dim(); }
  void draw(int n, CounterRng& rng, Eigen::MatrixXd& out) const override {
    out = mix_.sample(n, rng);
  }

 private:
  GaussianMixture mix_;
};

/// Draws rows of a fixed data matrix with replacement.
class MatrixDataSource final : public TrainingDataSource {
 public:
  explicit MatrixDataSource(Eigen::MatrixXd data) : data_(std::move(data)) {
    if (data_.rows() == 0) throw InvalidInputError("MatrixDataSource: empty data");
  }
  int dim() const override { return static_cast<int>(data_.cols()); }
  void draw(int n, CounterRng& rng, Eigen::MatrixXd& out) const override {
    out.resize(n, data_.cols());
    for (int i = 0; i < n; ++i)
      out.row(i) = data_.row(static_cast<Eigen::Index>(rng.uniform_int(data_.rows())));
  }

 private:
  Eigen::MatrixXd data_;
};

struct TrainConfig {
  std::int64_t iterations = 0;
  int batch_size = 512;
  double learning_rate = 1e-3;
  std::uint64_t seed = 0;
  double t_min_frac = 1e-3;  // training times drawn from U[t_min_frac * t_f, t_f]
  int log_every = 100;
  int checkpoint_every = 0;  // 0 = only at the end
  std::string checkpoint_path;

  void validate() const {
    if (iterations < 0) throw InvalidInputError("TrainConfig: iterations must be >= 0");
    if (batch_size < 1) throw InvalidInputError("TrainConfig: batch_size must be >= 1");
    if (!(learning_rate > 0.0)) throw InvalidInputError("TrainConfig: learning_rate must be > 0");
  }
};

/// One kernel-perturbed batch with its conditional-score regression target.
/// For the active process, (x, eta) | x0 is drawn from the eta0-marginalized
/// kernel and `target` is grad_eta log P(x, eta | x0); for passive, eta is
/// empty and `target` is grad_x log P(x | x0).
struct ScoreMatchBatch {
  Eigen::MatrixXd x;
  Eigen::MatrixXd eta;
  Eigen::VectorXd t;
  Eigen::MatrixXd target;
  Eigen::MatrixXd x0;
};

ScoreMatchBatch make_score_match_batch(const DiffusionParams& params,
                                       const TrainingDataSource& source, int n,
                                       double t_min, CounterRng& rng);

/// Full eta-score estimate under the mixed parameterization:
///   S(x, eta, t) = -eta / m22 + net(x, eta, t)
/// with m22 taken from the x0-marginalized kernel (= T_a/tau, the stationary
/// eta variance, so a zero-initialized net starts at the exact prior score).
Eigen::VectorXd mixed_score(const ScoreNet& net, const DiffusionParams& params,
                            const JointState& state, const KernelMoments& moments);

void mixed_score_batch(const ScoreNet& net, const DiffusionParams& params,
                       const Eigen::MatrixXd& x, const Eigen::MatrixXd& eta,
                       double t, Eigen::MatrixXd& out);

/// Passive analogue: S(x, t) = -x / Delta_t + net(x, t).
void passive_net_score_batch(const ScoreNet& net, const DiffusionParams& params,
                             const Eigen::MatrixXd& x, double t, Eigen::MatrixXd& out);

/// Mean-squared score-matching loss of a batch under the mixed
/// parameterization; accumulates parameter gradients when `grads` is given.
double score_match_loss(const ScoreNet& net, const DiffusionParams& params,
                        const ScoreMatchBatch& batch, NetGradients* grads);

struct TrainResult {
  std::vector<std::pair<std::int64_t, double>> loss_trace;  // (iteration, batch loss)
  std::int64_t iterations_run = 0;
};

/// Stochastic-gradient training of the score net (HSM for active, denoising
/// score matching for passive; both via the mixed parameterization).
/// Deterministic given (seed, config); iteration i draws from its own RNG
/// stream, so runs resumed from a checkpoint continue bit-identically.
TrainResult train(ScoreNet& net, AdamOptimizer& opt, const DiffusionParams& params,
                  const TrainingDataSource& source, const TrainConfig& config,
                  std::int64_t start_iteration = 0,
                  const std::function<void(std::int64_t, const ScoreNet&, const AdamOptimizer&)>&
                      checkpoint_hook = nullptr);

}  // namespace actdiff
