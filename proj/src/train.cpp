#include "actdiff/train.hpp"

#include <cmath>

#include "actdiff/forward.hpp"
#include "actdiff/log.hpp"

namespace actdiff {

ScoreMatchBatch make_score_match_batch(const DiffusionParams& params,
                                       const TrainingDataSource& source, int n,
                                       double t_min, CounterRng& rng) {
  params.validate();
  const int d = source.dim();
  ScoreMatchBatch batch;
  source.draw(n, rng, batch.x0);
  batch.t.resize(n);
  batch.x.resize(n, d);
  batch.target.resize(n, d);
  const bool active = params.is_active();
  if (active) batch.eta.resize(n, d);

  for (int i = 0; i < n; ++i) {
    const double t = rng.uniform(t_min, params.t_f);
    batch.t[i] = t;
    if (active) {
      const KernelMoments m = marginal_moments_x0(params, t);
      const Chol2 L = cholesky2(m);
      for (int j = 0; j < d; ++j) {
        const double z1 = rng.normal();
        const double z2 = rng.normal();
        batch.x(i, j) = m.a * batch.x0(i, j) + L.l11 * z1;
        batch.eta(i, j) = L.l21 * z1 + L.l22 * z2;
        // conditional eta-score collapses to -z2 / l22 (see the 2x2 algebra)
        batch.target(i, j) = -z2 / L.l22;
      }
    } else {
      const double delta = passive_delta(params, t);
      const double a = std::exp(-params.k * t);
      const double sd = std::sqrt(delta);
      for (int j = 0; j < d; ++j) {
        const double z = rng.normal();
        batch.x(i, j) = a * batch.x0(i, j) + sd * z;
        batch.target(i, j) = -z / sd;
      }
    }
  }
  return batch;
}

namespace {

Eigen::MatrixXd assemble_input(const ScoreNet& net, const DiffusionParams& params,
                               const Eigen::MatrixXd& x, const Eigen::MatrixXd* eta,
                               const Eigen::VectorXd& t) {
  const NetConfig& cfg = net.config();
  Eigen::MatrixXd input(x.rows(), cfg.input_dim());
  input.leftCols(x.cols()) = x;
  int off = static_cast<int>(x.cols());
  if (cfg.with_eta) {
    input.middleCols(off, eta->cols()) = *eta;
    off += static_cast<int>(eta->cols());
  }
  input.rightCols(cfg.time_features) = time_embedding(t, cfg.time_features, params.t_f);
  return input;
}

}  // namespace

Eigen::VectorXd mixed_score(const ScoreNet& net, const DiffusionParams& params,
                            const JointState& state, const KernelMoments& moments) {
  if (moments.m22 <= 0.0)
    throw InvalidInputError("mixed_score: m22 must be > 0 (t > 0)");
  state.validate(true);
  const Eigen::VectorXd tvec = Eigen::VectorXd::Constant(1, state.t);
  const Eigen::MatrixXd xrow = state.x.transpose();
  const Eigen::MatrixXd erow = state.eta.transpose();
  const Eigen::MatrixXd input = assemble_input(net, params, xrow, &erow, tvec);
  return -state.eta / moments.m22 + net.forward(input).row(0).transpose();
}

void mixed_score_batch(const ScoreNet& net, const DiffusionParams& params,
                       const Eigen::MatrixXd& x, const Eigen::MatrixXd& eta,
                       double t, Eigen::MatrixXd& out) {
  const KernelMoments m = marginal_moments_x0(params, t);
  if (m.m22 <= 0.0) throw InvalidInputError("mixed_score_batch: m22 must be > 0");
  const Eigen::VectorXd tvec = Eigen::VectorXd::Constant(x.rows(), t);
  out = net.forward(assemble_input(net, params, x, &eta, tvec));
  out -= eta / m.m22;
}

void passive_net_score_batch(const ScoreNet& net, const DiffusionParams& params,
                             const Eigen::MatrixXd& x, double t, Eigen::MatrixXd& out) {
  const double delta = passive_delta(params, t);
  if (delta <= 0.0) throw InvalidInputError("passive_net_score_batch: Delta_t must be > 0");
  const Eigen::VectorXd tvec = Eigen::VectorXd::Constant(x.rows(), t);
  out = net.forward(assemble_input(net, params, x, nullptr, tvec));
  out -= x / delta;
}

double score_match_loss(const ScoreNet& net, const DiffusionParams& params,
                        const ScoreMatchBatch& batch, NetGradients* grads) {
  const auto n = batch.x.rows();
  const auto d = batch.x.cols();
  const bool active = params.is_active();

  // offsets of the mixed parameterization, per sample (time varies by row)
  Eigen::MatrixXd offset(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (active) {
      const KernelMoments m = marginal_moments_x0(params, batch.t[i]);
      offset.row(i) = -batch.eta.row(i) / m.m22;
    } else {
      offset.row(i) = -batch.x.row(i) / passive_delta(params, batch.t[i]);
    }
  }

  const Eigen::MatrixXd input =
      assemble_input(net, params, batch.x, active ? &batch.eta : nullptr, batch.t);
  ScoreNet::Workspace ws;
  net.forward(input, ws);
  const Eigen::MatrixXd resid = ws.out + offset - batch.target;
  const double loss = resid.squaredNorm() / static_cast<double>(n * d);
  if (grads) {
    const Eigen::MatrixXd dout = 2.0 / static_cast<double>(n * d) * resid;
    net.backward(ws, dout, *grads);
  }
  return loss;
}

TrainResult train(ScoreNet& net, AdamOptimizer& opt, const DiffusionParams& params,
                  const TrainingDataSource& source, const TrainConfig& config,
                  std::int64_t start_iteration,
                  const std::function<void(std::int64_t, const ScoreNet&, const AdamOptimizer&)>&
                      checkpoint_hook) {
  params.validate();
  config.validate();
  if (params.is_active() != net.config().with_eta)
    throw InvalidInputError("train: net/process kind mismatch");
  if (source.dim() != net.config().data_dim)
    throw InvalidInputError("train: data/net dimension mismatch");

  const double t_min = config.t_min_frac * params.t_f;
  TrainResult result;
  NetGradients grads = net.zero_gradients();
  for (std::int64_t it = start_iteration; it < start_iteration + config.iterations; ++it) {
    CounterRng rng(config.seed, substream(rng_domain::kTrainIteration, static_cast<std::uint64_t>(it)));
    const ScoreMatchBatch batch =
        make_score_match_batch(params, source, config.batch_size, t_min, rng);
    grads.setZero();
    const double loss = score_match_loss(net, params, batch, &grads);
    if (!std::isfinite(loss)) {
      if (checkpoint_hook) checkpoint_hook(it, net, opt);
      throw NumericError("train: non-finite loss at iteration " + std::to_string(it));
    }
    opt.step(net, grads);
    if (it % config.log_every == 0 || it + 1 == start_iteration + config.iterations) {
      result.loss_trace.emplace_back(it, loss);
      log_debug("train it " + std::to_string(it) + " loss " + std::to_string(loss));
    }
    if (config.checkpoint_every > 0 && checkpoint_hook && (it + 1) % config.checkpoint_every == 0)
      checkpoint_hook(it + 1, net, opt);
    ++result.iterations_run;
  }
  net.check_finite();
  return result;
}

}  // namespace actdiff
