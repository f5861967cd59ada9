#include "actdiff/net.hpp"

#include <cmath>

#include "actdiff/rng.hpp"

namespace actdiff {
namespace {

inline double silu(double z) { return z / (1.0 + std::exp(-z)); }

inline double silu_grad(double z) {
  const double s = 1.0 / (1.0 + std::exp(-z));
  return s * (1.0 + z * (1.0 - s));
}

}  // namespace

Eigen::MatrixXd time_embedding(const Eigen::VectorXd& t, int nfeat, double t_f) {
  if (nfeat % 2 != 0 || nfeat < 2) throw InvalidInputError("time_embedding: nfeat must be even and >= 2");
  const int half = nfeat / 2;
  // frequencies from 1/t_f to 1000/t_f, geometric; resolves time scales down
  // to ~1e-3 t_f where the kernel variance spans its last decade
  Eigen::VectorXd omega(half);
  for (int j = 0; j < half; ++j)
    omega[j] = 2.0 * M_PI / t_f * std::pow(10.0, 3.0 * j / (half - 1));
  Eigen::MatrixXd emb(t.size(), nfeat);
  for (Eigen::Index i = 0; i < t.size(); ++i)
    for (int j = 0; j < half; ++j) {
      const double ang = omega[j] * t[i];
      emb(i, 2 * j) = std::sin(ang);
      emb(i, 2 * j + 1) = std::cos(ang);
    }
  return emb;
}

ScoreNet::ScoreNet(const NetConfig& config, std::uint64_t seed) : config_(config) {
  if (config.data_dim < 1 || config.hidden_layers < 1 || config.hidden_units < 1)
    throw InvalidInputError("ScoreNet: bad architecture");
  CounterRng rng(seed, substream(rng_domain::kInit, 0));
  std::vector<int> dims;
  dims.push_back(config.input_dim());
  for (int l = 0; l < config.hidden_layers; ++l) dims.push_back(config.hidden_units);
  dims.push_back(config.data_dim);

  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    const double lim = 1.0 / std::sqrt(static_cast<double>(dims[l]));
    Eigen::MatrixXd w(dims[l], dims[l + 1]);
    Eigen::VectorXd b(dims[l + 1]);
    const bool output_layer = (l + 2 == dims.size());
    for (Eigen::Index i = 0; i < w.size(); ++i)
      w.data()[i] = output_layer ? 0.0 : rng.uniform(-lim, lim);
    for (Eigen::Index i = 0; i < b.size(); ++i)
      b[i] = output_layer ? 0.0 : rng.uniform(-lim, lim);
    weights.push_back(std::move(w));
    biases.push_back(std::move(b));
  }
}

std::int64_t ScoreNet::parameter_count() const {
  std::int64_t n = 0;
  for (const auto& w : weights) n += w.size();
  for (const auto& b : biases) n += b.size();
  return n;
}

Eigen::MatrixXd ScoreNet::forward(const Eigen::MatrixXd& input) const {
  Eigen::MatrixXd a = input;
  const int L = layer_count();
  for (int l = 0; l < L - 1; ++l) {
    a = ((a * weights[l]).rowwise() + biases[l].transpose()).unaryExpr([](double z) { return silu(z); });
  }
  return (a * weights[L - 1]).rowwise() + biases[L - 1].transpose();
}

void ScoreNet::forward(const Eigen::MatrixXd& input, Workspace& ws) const {
  const int L = layer_count();
  ws.pre.resize(L - 1);
  ws.act.resize(L);
  ws.act[0] = input;
  for (int l = 0; l < L - 1; ++l) {
    ws.pre[l] = (ws.act[l] * weights[l]).rowwise() + biases[l].transpose();
    ws.act[l + 1] = ws.pre[l].unaryExpr([](double z) { return silu(z); });
  }
  ws.out = (ws.act[L - 1] * weights[L - 1]).rowwise() + biases[L - 1].transpose();
}

void ScoreNet::backward(const Workspace& ws, const Eigen::MatrixXd& dloss_dout,
                        NetGradients& grads) const {
  const int L = layer_count();
  grads.w[L - 1] += ws.act[L - 1].transpose() * dloss_dout;
  grads.b[L - 1] += dloss_dout.colwise().sum().transpose();
  Eigen::MatrixXd da = dloss_dout * weights[L - 1].transpose();
  for (int l = L - 2; l >= 0; --l) {
    const Eigen::MatrixXd dz = da.cwiseProduct(ws.pre[l].unaryExpr([](double z) { return silu_grad(z); }));
    grads.w[l] += ws.act[l].transpose() * dz;
    grads.b[l] += dz.colwise().sum().transpose();
    if (l > 0) da = dz * weights[l].transpose();
  }
}

NetGradients ScoreNet::zero_gradients() const {
  NetGradients g;
  for (const auto& w : weights) g.w.emplace_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
  for (const auto& b : biases) g.b.emplace_back(Eigen::VectorXd::Zero(b.size()));
  return g;
}

void ScoreNet::check_finite() const {
  for (const auto& w : weights)
    if (!w.allFinite()) throw NumericError("ScoreNet: non-finite weights");
  for (const auto& b : biases)
    if (!b.allFinite()) throw NumericError("ScoreNet: non-finite biases");
}

AdamOptimizer::AdamOptimizer(const ScoreNet& net, double lr, double beta1, double beta2,
                             double eps)
    : m(net.zero_gradients()), v(net.zero_gradients()), lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {}

void AdamOptimizer::step(ScoreNet& net, const NetGradients& grads) {
  ++step_count_;
  const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(step_count_));
  const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(step_count_));
  auto update = [&](auto& p, auto& mm, auto& vv, const auto& g) {
    mm = beta1_ * mm + (1.0 - beta1_) * g;
    vv = beta2_ * vv + (1.0 - beta2_) * g.cwiseProduct(g);
    p.array() -= lr_ * (mm.array() / bc1) / ((vv.array() / bc2).sqrt() + eps_);
  };
  for (std::size_t l = 0; l < net.weights.size(); ++l) {
    update(net.weights[l], m.w[l], v.w[l], grads.w[l]);
    update(net.biases[l], m.b[l], v.b[l], grads.b[l]);
  }
}

}  // namespace actdiff
