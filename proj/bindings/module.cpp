// Python bindings for the main operations: kernels, scores, samplers,
// datasets and metrics. Matrices map to numpy arrays (rows = samples).
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "actdiff/analytic_score.hpp"
#include "actdiff/datasets.hpp"
#include "actdiff/forward.hpp"
#include "actdiff/ising.hpp"
#include "actdiff/kernel.hpp"
#include "actdiff/metrics.hpp"
#include "actdiff/sampler.hpp"
#include "actdiff/score_source.hpp"

namespace py = pybind11;
using namespace actdiff;

namespace {

DiffusionParams make_params(const std::string& kind, double k, double T, double T_a, double tau,
                            double t_f, double T_p) {
  if (kind == "passive") return DiffusionParams::make_passive(k, T, t_f);
  if (kind == "active") return DiffusionParams::make_active(k, T_a, tau, t_f, T_p);
  throw InvalidInputError("kind must be 'passive' or 'active'");
}

GaussianMixture make_mixture(const Eigen::VectorXd& weights, const Eigen::MatrixXd& means,
                             const Eigen::MatrixXd& variances) {
  GaussianMixture mix;
  mix.weights = weights;
  mix.means = means;
  mix.variances = variances;
  mix.validate();
  return mix;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "active-noise generative diffusion core";

  py::register_exception<InvalidInputError>(m, "InvalidInputError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericalError", PyExc_RuntimeError);

  py::class_<DiffusionParams>(m, "DiffusionParams")
      .def(py::init(&make_params), py::arg("kind"), py::arg("k") = 1.0, py::arg("T") = 1.0,
           py::arg("T_a") = 1.0, py::arg("tau") = 0.5, py::arg("t_f") = 1.0, py::arg("T_p") = 0.0)
      .def_readonly("k", &DiffusionParams::k)
      .def_readonly("T_p", &DiffusionParams::T_p)
      .def_readonly("T_a", &DiffusionParams::T_a)
      .def_readonly("tau", &DiffusionParams::tau)
      .def_readonly("t_f", &DiffusionParams::t_f)
      .def_property_readonly("kind", [](const DiffusionParams& p) {
        return p.is_active() ? "active" : "passive";
      });

  py::class_<KernelMoments>(m, "KernelMoments")
      .def_readonly("a", &KernelMoments::a)
      .def_readonly("b", &KernelMoments::b)
      .def_readonly("bcoef", &KernelMoments::bcoef)
      .def_readonly("m11", &KernelMoments::m11)
      .def_readonly("m12", &KernelMoments::m12)
      .def_readonly("m22", &KernelMoments::m22)
      .def("cov", &KernelMoments::cov);

  m.def("kernel_moments", &kernel_moments, py::arg("params"), py::arg("t"));
  m.def("stationary_moments", &stationary_moments, py::arg("params"));
  m.def("marginal_moments_x0", &marginal_moments_x0, py::arg("params"), py::arg("t"));

  py::class_<GaussianMixture>(m, "GaussianMixture")
      .def(py::init(&make_mixture), py::arg("weights"), py::arg("means"), py::arg("variances"))
      .def_readonly("weights", &GaussianMixture::weights)
      .def_readonly("means", &GaussianMixture::means)
      .def_readonly("variances", &GaussianMixture::variances)
      .def("sample",
           [](const GaussianMixture& mix, int n, std::uint64_t seed) {
             CounterRng rng(seed, substream(rng_domain::kDataset, 1));
             return mix.sample(n, rng);
           },
           py::arg("n"), py::arg("seed") = 0)
      .def("mean", &GaussianMixture::mean)
      .def("covariance", &GaussianMixture::covariance);

  m.def("diamond_mixture", &diamond_mixture, py::arg("r"), py::arg("sigma"));

  m.def("passive_log_density", &passive_log_density, py::arg("mix"), py::arg("x"), py::arg("t"),
        py::arg("params"));
  m.def("passive_score", &passive_score, py::arg("mix"), py::arg("x"), py::arg("t"),
        py::arg("params"));
  m.def("active_joint_log_density", &active_joint_log_density, py::arg("mix"), py::arg("x"),
        py::arg("eta"), py::arg("t"), py::arg("params"));
  m.def("active_joint_score",
        [](const GaussianMixture& mix, const Eigen::VectorXd& x, const Eigen::VectorXd& eta,
           double t, const DiffusionParams& params) {
          const ActiveScorePair s = active_joint_score(mix, x, eta, t, params);
          return py::make_tuple(s.f_x, s.f_eta);
        },
        py::arg("mix"), py::arg("x"), py::arg("eta"), py::arg("t"), py::arg("params"));

  m.def("forward_kernel_sample",
        [](const DiffusionParams& params, const Eigen::VectorXd& x0, double t,
           std::uint64_t seed) {
          CounterRng rng(seed, substream(rng_domain::kForwardPath, 0));
          const JointState s = forward_kernel_sample(params, x0, t, rng);
          return py::make_tuple(s.x, s.eta);
        },
        py::arg("params"), py::arg("x0"), py::arg("t"), py::arg("seed") = 0);

  m.def("prior_sample",
        [](const DiffusionParams& params, int dim, std::uint64_t seed) {
          CounterRng rng(seed, substream(rng_domain::kPrior, 0));
          const JointState s = prior_sample(params, dim, rng);
          return py::make_tuple(s.x, s.eta);
        },
        py::arg("params"), py::arg("dim"), py::arg("seed") = 0);

  m.def("sample_reverse_sde",
        [](const GaussianMixture& mix, const DiffusionParams& params, int n_samples, int n_steps,
           bool denoise_last, std::uint64_t seed) {
          AnalyticScoreSource score(mix, params);
          SamplerConfig cfg;
          cfg.n_samples = n_samples;
          cfg.n_steps = n_steps;
          cfg.denoise_last = denoise_last;
          cfg.seed = seed;
          return sample_reverse_sde(score, params, cfg).x;
        },
        py::arg("mix"), py::arg("params"), py::arg("n_samples"), py::arg("n_steps"),
        py::arg("denoise_last") = false, py::arg("seed") = 0,
        "reverse-SDE samples driven by the analytic mixture score");

  m.def("sample_probability_flow",
        [](const GaussianMixture& mix, const DiffusionParams& params, int n_samples, int n_steps,
           double abs_tol, double rel_tol, std::uint64_t seed, int threads) {
          AnalyticScoreSource score(mix, params);
          SamplerConfig cfg;
          cfg.kind = SamplerKind::ode_adaptive;
          cfg.n_samples = n_samples;
          cfg.n_steps = n_steps;
          cfg.ode_abs_tol = abs_tol;
          cfg.ode_rel_tol = rel_tol;
          cfg.seed = seed;
          cfg.threads = threads;
          return sample_probability_flow(score, params, cfg).x;
        },
        py::arg("mix"), py::arg("params"), py::arg("n_samples"), py::arg("n_steps") = 500,
        py::arg("abs_tol") = 1e-6, py::arg("rel_tol") = 1e-6, py::arg("seed") = 0,
        py::arg("threads") = 1);

  m.def("swiss_roll",
        [](int n, double noise, const std::string& variant, std::uint64_t seed) {
          SwissRollVariant v = SwissRollVariant::single;
          if (variant == "multiple") v = SwissRollVariant::multiple;
          else if (variant == "overlapping") v = SwissRollVariant::overlapping;
          else if (variant != "single") throw InvalidInputError("variant must be single|multiple|overlapping");
          return swiss_roll(n, noise, v, seed).samples;
        },
        py::arg("n"), py::arg("noise") = 0.01, py::arg("variant") = "single", py::arg("seed") = 0);

  m.def("ising_mcmc",
        [](int L, double T, std::int64_t steps, std::uint64_t seed) {
          return ising_mcmc(L, T, steps, seed).spins;
        },
        py::arg("L"), py::arg("T"), py::arg("steps"), py::arg("seed") = 0);

  m.def("convolution_metric",
        [](const std::vector<Eigen::MatrixXi>& lattices, const std::vector<int>& filter_sizes) {
          const ConvolutionCurve c = convolution_metric(lattices, filter_sizes);
          return py::make_tuple(c.filter_sizes, c.values);
        },
        py::arg("lattices"), py::arg("filter_sizes"));

  m.def("mixture_recovery",
        [](const Eigen::MatrixXd& samples, const GaussianMixture& mix) {
          const MixtureRecoveryReport r = mixture_recovery(samples, mix);
          py::dict d;
          d["counts"] = r.counts;
          d["frequencies"] = r.frequencies;
          d["stds"] = r.stds;
          d["unassigned_fraction"] = r.unassigned_fraction;
          return d;
        },
        py::arg("samples"), py::arg("mix"));

  m.def("energy_distance", &energy_distance, py::arg("a"), py::arg("b"), py::arg("cap") = 2000);

  m.def("speciation_times",
        [](const Eigen::MatrixXd& c0, double T_p, double T_a, double tau) {
          const SpeciationTimes t = speciation_times(c0, T_p, T_a, tau);
          return py::make_tuple(t.t_passive, t.t_active);
        },
        py::arg("c0"), py::arg("T_p"), py::arg("T_a"), py::arg("tau"));

  m.def("fourier_decay_rates",
        [](double k_mode, double x0, double t, double T, double T_a, double tau) {
          const FourierRates r = fourier_decay_rates(k_mode, x0, t, T, T_a, tau);
          py::dict d;
          d["passive"] = r.passive;
          d["active"] = r.active;
          d["passive_small_t"] = r.passive_small_t;
          d["active_small_t"] = r.active_small_t;
          d["oscillatory"] = r.oscillatory;
          return d;
        },
        py::arg("k_mode"), py::arg("x0"), py::arg("t"), py::arg("T"), py::arg("T_a"),
        py::arg("tau"));
}
