#pragma once

#include <memory>

#include "actdiff/analytic_score.hpp"
#include "actdiff/net.hpp"
#include "actdiff/params.hpp"
#include "actdiff/train.hpp"

namespace actdiff {

/// Provider of score fields for the reverse-time integrators. Implementations
/// must be safe for concurrent const use.
class ScoreSource {
 public:
  virtual ~ScoreSource() = default;
  virtual int dim() const = 0;

  /// Evaluate scores for a batch of states (rows). `eta`/`feta` are ignored
  /// for passive processes. Outputs are resized by the callee.
  virtual void scores(const Eigen::MatrixXd& x, const Eigen::MatrixXd& eta, double t,
                      Eigen::MatrixXd& fx, Eigen::MatrixXd& feta) const = 0;
};

/// Closed-form mixture scores (analytic reverse diffusion).
class AnalyticScoreSource final : public ScoreSource {
 public:
  AnalyticScoreSource(GaussianMixture mix, DiffusionParams params)
      : mix_(std::move(mix)), params_(params) {
    mix_.validate();
    params_.validate();
  }
  int dim() const override { return mix_.dim(); }
  void scores(const Eigen::MatrixXd& x, const Eigen::MatrixXd& eta, double t,
              Eigen::MatrixXd& fx, Eigen::MatrixXd& feta) const override {
    if (params_.is_active())
      active_joint_score_batch(mix_, x, eta, t, params_, fx, feta);
    else
      passive_score_batch(mix_, x, t, params_, fx);
  }

 private:
  GaussianMixture mix_;
  DiffusionParams params_;
};

/// Learned scores under the mixed parameterization. For active processes the
/// x-score is not modeled (T_p = 0 runs do not use it).
class NetScoreSource final : public ScoreSource {
 public:
  NetScoreSource(ScoreNet net, DiffusionParams params)
      : net_(std::move(net)), params_(params) {
    params_.validate();
    if (params_.is_active() != net_.config().with_eta)
      throw InvalidInputError("NetScoreSource: net/process kind mismatch");
    if (params_.is_active() && params_.T_p != 0.0)
      throw InvalidInputError("NetScoreSource: learned active scores require T_p = 0");
  }
  int dim() const override { return net_.config().data_dim; }
  void scores(const Eigen::MatrixXd& x, const Eigen::MatrixXd& eta, double t,
              Eigen::MatrixXd& fx, Eigen::MatrixXd& feta) const override {
    if (params_.is_active()) {
      mixed_score_batch(net_, params_, x, eta, t, feta);
      fx.setZero(x.rows(), x.cols());
    } else {
      passive_net_score_batch(net_, params_, x, t, fx);
    }
  }
  const ScoreNet& net() const { return net_; }

 private:
  ScoreNet net_;
  DiffusionParams params_;
};

/// Identically zero scores; drift-only integration (used in tests and for
/// noiseless degenerate configurations).
class ZeroScoreSource final : public ScoreSource {
 public:
  explicit ZeroScoreSource(int dim) : dim_(dim) {}
  int dim() const override { return dim_; }
  void scores(const Eigen::MatrixXd& x, const Eigen::MatrixXd&, double,
              Eigen::MatrixXd& fx, Eigen::MatrixXd& feta) const override {
    fx.setZero(x.rows(), x.cols());
    feta.setZero(x.rows(), x.cols());
  }

 private:
  int dim_;
};

}  // namespace actdiff
