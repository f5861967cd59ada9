#include "actdiff/sampler.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "actdiff/forward.hpp"
#include "actdiff/log.hpp"
#include "actdiff/ode.hpp"

namespace actdiff {
namespace {

double last_eval_time(const DiffusionParams& params, const SamplerConfig& config, double dt) {
  // scores are never evaluated below this time; the Delta -> 0 region is
  // excluded (analytic) and the net is not queried outside its training range
  return config.learned_score ? std::max(dt, 1e-3 * params.t_f) : dt;
}

void init_prior(const DiffusionParams& params, int d, const SamplerConfig& config,
                Eigen::MatrixXd& x, Eigen::MatrixXd& eta) {
  const int n = config.n_samples;
  x.resize(n, d);
  const bool active = params.is_active();
  eta.resize(active ? n : 0, d);
  for (int i = 0; i < n; ++i) {
    CounterRng rng(config.seed, substream(rng_domain::kSamplerChain, static_cast<std::uint64_t>(i)));
    const JointState s = prior_sample(params, d, rng);
    x.row(i) = s.x.transpose();
    if (active) eta.row(i) = s.eta.transpose();
  }
}

}  // namespace

SampleSet sample_reverse_sde(const ScoreSource& score, const DiffusionParams& params,
                             const SamplerConfig& config) {
  params.validate();
  config.validate();
  const int d = score.dim();
  const int n = config.n_samples;
  const double dt = params.t_f / config.n_steps;
  const double t_last = last_eval_time(params, config, dt);
  const bool active = params.is_active();

  SampleSet out;
  init_prior(params, d, config, out.x, out.eta);
  if (n == 0) return out;

  // per-chain noise streams, consumed sequentially; lockstep batching is a
  // layout detail and does not affect the draws
  std::vector<CounterRng> noise;
  noise.reserve(n);
  for (int i = 0; i < n; ++i)
    noise.emplace_back(config.seed, substream(rng_domain::kSamplerChain, 0x100000000ull + i));

  const double amp_x = reverse_noise_amp_x(params);
  const double amp_e = reverse_noise_amp_eta(params);
  const double sq_dt = std::sqrt(dt);

  Eigen::MatrixXd fx, feta;
  double t = params.t_f;
  while (t > t_last - 0.5 * dt) {
    score.scores(out.x, out.eta, t, fx, feta);
    const bool final_step = (t <= t_last + 0.5 * dt);
    const bool with_noise = !(final_step && config.denoise_last);
    if (active) {
      out.x += dt * (params.k * out.x - out.eta);
      if (params.T_p > 0.0) {
        out.x += (2.0 * params.T_p * dt) * fx;
        if (with_noise)
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < d; ++j) out.x(i, j) += amp_x * sq_dt * noise[i].normal();
      }
      out.eta += dt * (out.eta / params.tau + (2.0 * params.T_a / (params.tau * params.tau)) * feta);
      if (with_noise)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < d; ++j) out.eta(i, j) += amp_e * sq_dt * noise[i].normal();
    } else {
      out.x += dt * (params.k * out.x + 2.0 * params.T_p * fx);
      if (with_noise)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < d; ++j) out.x(i, j) += amp_x * sq_dt * noise[i].normal();
    }
    if (!out.x.allFinite() || !out.eta.allFinite())
      throw NumericError("sample_reverse_sde: non-finite state at t = " + std::to_string(t) +
                         " (dt = " + std::to_string(dt) + ")");
    t -= dt;
  }
  return out;
}

SampleSet sample_probability_flow(const ScoreSource& score, const DiffusionParams& params,
                                  const SamplerConfig& config) {
  params.validate();
  config.validate();
  const int d = score.dim();
  const int n = config.n_samples;
  const bool active = params.is_active();
  const double dt_nominal = params.t_f / config.n_steps;
  const double t_last = last_eval_time(params, config, dt_nominal);
  const double s_end = params.t_f - t_last;

  SampleSet out;
  init_prior(params, d, config, out.x, out.eta);
  if (n == 0 || s_end <= 0.0) return out;

  OdeOptions opts;
  opts.abs_tol = config.ode_abs_tol;
  opts.rel_tol = config.ode_rel_tol;
  opts.initial_step = params.t_f / 100.0;

  // probability flow: drift - (g^2/2) * score, run in reverse time
  auto integrate_chain = [&](int i) {
    Eigen::VectorXd y(active ? 2 * d : d);
    y.head(d) = out.x.row(i).transpose();
    if (active) y.tail(d) = out.eta.row(i).transpose();
    Eigen::MatrixXd xi(1, d), ei(active ? 1 : 0, d), fx, feta;
    OdeRhs rhs = [&](double s, const Eigen::VectorXd& yy, Eigen::VectorXd& dyds) {
      const double tt = params.t_f - s;
      xi.row(0) = yy.head(d).transpose();
      if (active) ei.row(0) = yy.tail(d).transpose();
      score.scores(xi, ei, tt, fx, feta);
      if (active) {
        dyds.head(d) = params.k * yy.head(d) - yy.tail(d) +
                       params.T_p * fx.row(0).transpose();
        dyds.tail(d) = yy.tail(d) / params.tau +
                       (params.T_a / (params.tau * params.tau)) * feta.row(0).transpose();
      } else {
        dyds = params.k * yy + params.T_p * fx.row(0).transpose();
      }
    };
    const Eigen::VectorXd yf = integrate_rk45(rhs, y, 0.0, s_end, opts);
    out.x.row(i) = yf.head(d).transpose();
    if (active) out.eta.row(i) = yf.tail(d).transpose();
  };

  const int threads = std::max(1, config.threads);
  if (threads == 1 || n < 2) {
    for (int i = 0; i < n; ++i) integrate_chain(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&] {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) integrate_chain(i);
      });
    for (auto& th : pool) th.join();
  }
  return out;
}

std::vector<DtSweepRow> dt_sweep(
    const ScoreSource& score, const DiffusionParams& params, const std::vector<double>& dts,
    const SamplerConfig& base,
    const std::function<std::map<std::string, double>(const Eigen::MatrixXd&)>& metrics_hook) {
  std::vector<DtSweepRow> rows;
  for (const double dt : dts) {
    if (!(dt > 0.0) || dt > params.t_f) throw InvalidInputError("dt_sweep: dt must be in (0, t_f]");
    SamplerConfig cfg = base;
    cfg.n_steps = std::max(1, static_cast<int>(std::lround(params.t_f / dt)));
    DtSweepRow row;
    row.dt = dt;
    row.n_steps = cfg.n_steps;
    log_info("dt_sweep: dt = " + std::to_string(dt));
    const SampleSet s = sample_reverse_sde(score, params, cfg);
    if (metrics_hook) row.metrics = metrics_hook(s.x);
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXi discretize_spins(const Eigen::MatrixXd& x) {
  return x.unaryExpr([](double v) { return v >= 0.0 ? 1 : -1; }).cast<int>();
}

}  // namespace actdiff
