#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "actdiff/errors.hpp"

namespace actdiff {

/// Architecture of the fully-connected score network. Input is
/// (x [, eta], time features); output approximates the learned score
/// component, one entry per data dimension.
struct NetConfig {
  int data_dim = 2;
  bool with_eta = true;      // active nets see (x, eta); passive nets see x only
  int hidden_layers = 4;
  int hidden_units = 128;
  int time_features = 16;    // sinusoidal features, geometric frequency ladder

  int input_dim() const { return data_dim * (with_eta ? 2 : 1) + time_features; }

  bool operator==(const NetConfig&) const = default;
};

/// Sinusoidal embedding of t ∈ [0, t_f]: interleaved sin/cos over
/// `nfeat/2` geometrically spaced frequencies. Rows follow the input times.
Eigen::MatrixXd time_embedding(const Eigen::VectorXd& t, int nfeat, double t_f);

struct NetGradients {
  std::vector<Eigen::MatrixXd> w;
  std::vector<Eigen::VectorXd> b;

  void setZero() {
    for (auto& m : w) m.setZero();
    for (auto& v : b) v.setZero();
  }
};

/// MLP with SiLU hidden activations and a linear output layer.
/// Hidden layers use fan-in-scaled uniform init; the output layer starts at
/// zero so the initial mixed score reduces to its analytic offset.
class ScoreNet {
 public:
  ScoreNet() = default;
  ScoreNet(const NetConfig& config, std::uint64_t seed);

  const NetConfig& config() const { return config_; }
  int layer_count() const { return static_cast<int>(weights.size()); }
  std::int64_t parameter_count() const;

  /// Batched evaluation; rows of `input` are samples of size input_dim().
  Eigen::MatrixXd forward(const Eigen::MatrixXd& input) const;

  /// Training-mode forward keeping activations for backward().
  struct Workspace {
    std::vector<Eigen::MatrixXd> pre;  // pre-activations per hidden layer
    std::vector<Eigen::MatrixXd> act;  // act[0] = input, act[i] = hidden output
    Eigen::MatrixXd out;
  };
  void forward(const Eigen::MatrixXd& input, Workspace& ws) const;

  /// Reverse-mode accumulation of d(loss)/d(parameters) given
  /// d(loss)/d(output); adds into `grads` (call grads.setZero() first).
  void backward(const Workspace& ws, const Eigen::MatrixXd& dloss_dout,
                NetGradients& grads) const;

  NetGradients zero_gradients() const;

  void check_finite() const;

  // Parameters, exposed for the optimizer, checkpointing and tests.
  std::vector<Eigen::MatrixXd> weights;  // weights[l]: in x out
  std::vector<Eigen::VectorXd> biases;

 private:
  NetConfig config_;
};

/// Adaptive moment estimation with bias correction; lr 1e-3 by default,
/// no weight decay.
class AdamOptimizer {
 public:
  AdamOptimizer() = default;
  explicit AdamOptimizer(const ScoreNet& net, double lr = 1e-3, double beta1 = 0.9,
                         double beta2 = 0.999, double eps = 1e-8);

  void step(ScoreNet& net, const NetGradients& grads);

  std::int64_t step_count() const { return step_count_; }
  double learning_rate() const { return lr_; }

  // Moment state, exposed for checkpoint round-trips.
  NetGradients m, v;
  void set_step_count(std::int64_t n) { step_count_ = n; }

 private:
  double lr_ = 1e-3, beta1_ = 0.9, beta2_ = 0.999, eps_ = 1e-8;
  std::int64_t step_count_ = 0;
};

}  // namespace actdiff
