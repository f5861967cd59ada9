#include "actdiff/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "actdiff/checkpoint.hpp"
#include "actdiff/config.hpp"
#include "actdiff/datasets.hpp"
#include "actdiff/errors.hpp"
#include "actdiff/io.hpp"
#include "actdiff/ising.hpp"
#include "actdiff/log.hpp"
#include "actdiff/metrics.hpp"
#include "actdiff/sampler.hpp"
#include "actdiff/score_source.hpp"

namespace actdiff {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string hash_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// Records every produced file against the config hash that produced it.
class ManifestWriter {
 public:
  ManifestWriter(const fs::path& dir, const json& effective_config, const std::string& command)
      : path_(dir / "manifest.json") {
    if (fs::exists(path_)) {
      try {
        std::ifstream in(path_);
        in >> doc_;
      } catch (...) {
        doc_ = json::object();
      }
    }
    if (!doc_.contains("entries")) doc_["entries"] = json::array();
    hash_ = hash_hex(config_hash(effective_config));
    command_ = command;
  }

  void add_file(const fs::path& p, const std::string& role, json extra = json::object()) {
    json e{{"path", p.string()}, {"role", role}, {"config_hash", hash_}, {"command", command_}};
    for (auto& [k, v] : extra.items()) e[k] = v;
    doc_["entries"].push_back(std::move(e));
  }

  void set(const std::string& key, json value) { doc_[key] = std::move(value); }

  ~ManifestWriter() {
    std::ofstream out(path_);
    if (out) out << doc_.dump(2) << "\n";
  }

 private:
  fs::path path_;
  json doc_ = json::object();
  std::string hash_, command_;
};

fs::path ensure_out_dir(const RunConfig& cfg) {
  fs::path dir(cfg.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir))
    throw ConfigError("output directory is not writable: " + cfg.output_dir);
  return dir;
}

std::vector<std::string> sample_header(int d, bool with_eta) {
  std::vector<std::string> h;
  for (int j = 0; j < d; ++j) h.push_back("x" + std::to_string(j));
  if (with_eta)
    for (int j = 0; j < d; ++j) h.push_back("eta" + std::to_string(j));
  return h;
}

json mixture_to_json(const GaussianMixture& mix) {
  json peaks = json::array();
  for (int a = 0; a < mix.peaks(); ++a) {
    json mean = json::array(), var = json::array();
    for (int j = 0; j < mix.dim(); ++j) {
      mean.push_back(mix.means(a, j));
      var.push_back(mix.variances(a, j));
    }
    peaks.push_back({{"weight", mix.weights[a]}, {"mean", mean}, {"variance", var}});
  }
  return {{"peaks", peaks}};
}

Eigen::MatrixXd training_matrix(const RunConfig& cfg) {
  switch (cfg.dataset.kind) {
    case DatasetKind::swiss_roll:
      if (!cfg.dataset.path.empty()) return read_csv(cfg.dataset.path);
      return swiss_roll(cfg.dataset.n_samples, cfg.dataset.roll_noise, cfg.dataset.roll_variant,
                        cfg.seed)
          .samples;
    case DatasetKind::csv:
      return ingest_csv_2d(cfg.dataset.csv_path, cfg.dataset.csv_normalize).samples;
    case DatasetKind::ising: {
      if (!cfg.dataset.path.empty()) {
        // directory of lattice files produced by gen-data
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(cfg.dataset.path))
          if (e.path().extension() == ".txt") files.push_back(e.path());
        if (files.empty()) throw ConfigError("dataset.path has no lattice .txt files");
        std::sort(files.begin(), files.end());
        Eigen::MatrixXd m(files.size(), cfg.dataset.ising_L * cfg.dataset.ising_L);
        for (std::size_t i = 0; i < files.size(); ++i) {
          const IsingLattice lat = read_lattice(files[i].string());
          if (lat.L != cfg.dataset.ising_L)
            throw ConfigError("lattice size mismatch in " + files[i].string());
          m.row(i) = lat.flattened().transpose();
        }
        return m;
      }
      const auto lats = ising_ensemble(cfg.dataset.ising_L, cfg.dataset.ising_T,
                                       cfg.dataset.ising_steps, cfg.dataset.ising_count, cfg.seed,
                                       cfg.threads);
      Eigen::MatrixXd m(lats.size(), cfg.dataset.ising_L * cfg.dataset.ising_L);
      for (std::size_t i = 0; i < lats.size(); ++i) m.row(i) = lats[i].flattened().transpose();
      return m;
    }
    default:
      throw ConfigError("dataset kind is mixture-backed; no sample matrix");
  }
}

std::unique_ptr<TrainingDataSource> make_source(const RunConfig& cfg) {
  if (cfg.dataset.kind == DatasetKind::diamond || cfg.dataset.kind == DatasetKind::mixture)
    return std::make_unique<MixtureDataSource>(mixture_from_config(cfg));
  return std::make_unique<MatrixDataSource>(training_matrix(cfg));
}

SamplerConfig sampler_config(const RunConfig& cfg, bool learned) {
  SamplerConfig sc;
  sc.kind = cfg.sampler.kind;
  sc.n_steps = cfg.sampler.n_steps;
  sc.denoise_last = cfg.sampler.denoise_last;
  sc.ode_abs_tol = cfg.sampler.ode_abs_tol;
  sc.ode_rel_tol = cfg.sampler.ode_rel_tol;
  sc.seed = cfg.seed;
  sc.n_samples = cfg.sampler.n_samples;
  sc.threads = cfg.threads;
  sc.learned_score = learned;
  return sc;
}

}  // namespace

json apply_overrides(json config, const CliOverrides& o) {
  if (o.seed) config["seed"] = *o.seed;
  if (o.out_dir) config["output_dir"] = *o.out_dir;
  if (o.denoise_last) config["sampler"]["denoise_last"] = *o.denoise_last;
  if (o.threads) config["threads"] = *o.threads;
  if (o.n_steps && o.dt) throw ConfigError("give either --dt or --n-steps, not both");
  if (o.n_steps) config["sampler"]["n_steps"] = *o.n_steps;
  if (o.dt) {
    double t_f = 1.0;
    if (config.contains("process") && config["process"].contains("t_f"))
      t_f = config["process"]["t_f"].get<double>();
    if (!(*o.dt > 0.0) || *o.dt > t_f) throw ConfigError("--dt must be in (0, t_f]");
    config["sampler"]["n_steps"] = static_cast<int>(std::lround(t_f / *o.dt));
  }
  return config;
}

void cmd_gen_data(const json& config_json) {
  const RunConfig cfg = parse_run_config(config_json);
  const fs::path out = ensure_out_dir(cfg);
  ManifestWriter manifest(out, config_json, "gen-data");
  manifest.set("seed", cfg.seed);

  switch (cfg.dataset.kind) {
    case DatasetKind::diamond:
    case DatasetKind::mixture: {
      const GaussianMixture mix = mixture_from_config(cfg);
      CounterRng rng(cfg.seed, substream(rng_domain::kDataset, 0));
      const Eigen::MatrixXd samples = mix.sample(cfg.dataset.n_samples, rng);
      const fs::path p = out / "dataset.csv";
      write_csv(p.string(), sample_header(mix.dim(), false), samples);
      manifest.add_file(p, "dataset", {{"n_samples", cfg.dataset.n_samples}});
      manifest.set("mixture", mixture_to_json(mix));
      log_info("gen-data: wrote " + p.string());
      break;
    }
    case DatasetKind::swiss_roll: {
      const Dataset2D ds = swiss_roll(cfg.dataset.n_samples, cfg.dataset.roll_noise,
                                      cfg.dataset.roll_variant, cfg.seed);
      const fs::path p = out / "dataset.csv";
      write_csv(p.string(), {"x0", "x1"}, ds.samples);
      manifest.add_file(p, "dataset", {{"provenance", ds.provenance}});
      break;
    }
    case DatasetKind::csv: {
      const Dataset2D ds = ingest_csv_2d(cfg.dataset.csv_path, cfg.dataset.csv_normalize);
      const fs::path p = out / "dataset.csv";
      write_csv(p.string(), {"x0", "x1"}, ds.samples);
      json norm = json::object();
      if (ds.norm.applied) {
        norm["shift"] = {ds.norm.shift[0], ds.norm.shift[1]};
        norm["scale"] = {ds.norm.scale[0], ds.norm.scale[1]};
      }
      manifest.add_file(p, "dataset", {{"provenance", ds.provenance}, {"normalization", norm}});
      break;
    }
    case DatasetKind::ising: {
      const fs::path dir = out / "lattices";
      fs::create_directories(dir);
      const auto lats = ising_ensemble(cfg.dataset.ising_L, cfg.dataset.ising_T,
                                       cfg.dataset.ising_steps, cfg.dataset.ising_count, cfg.seed,
                                       cfg.threads);
      json per_sample = json::array();
      for (std::size_t i = 0; i < lats.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "sample_%05zu.txt", i);
        const fs::path p = dir / name;
        write_lattice(p.string(), lats[i]);
        per_sample.push_back({{"file", p.filename().string()},
                              {"temperature", lats[i].temperature},
                              {"seed", lats[i].seed}});
      }
      std::ofstream lm(dir / "manifest.json");
      lm << json{{"L", cfg.dataset.ising_L},
                 {"temperature", cfg.dataset.ising_T},
                 {"steps", cfg.dataset.ising_steps},
                 {"samples", per_sample}}
                .dump(2)
         << "\n";
      manifest.add_file(dir / "manifest.json", "ising_manifest");
      manifest.add_file(dir, "lattice_dir", {{"count", cfg.dataset.ising_count}});
      log_info("gen-data: wrote " + std::to_string(lats.size()) + " lattices");
      break;
    }
  }
}

void cmd_train(const json& config_json, const std::optional<std::string>& resume_from) {
  const RunConfig cfg = parse_run_config(config_json);
  const fs::path out = ensure_out_dir(cfg);
  const std::uint64_t hash = config_hash(config_json);

  ScoreNet net;
  AdamOptimizer opt;
  std::int64_t start_iteration = 0;
  if (resume_from) {
    Checkpoint ck = load_checkpoint(*resume_from);
    if (ck.config_hash != hash)
      throw ConfigError("resume refused: checkpoint config hash " + hash_hex(ck.config_hash) +
                        " does not match this config " + hash_hex(hash));
    if (!(ck.net_config == cfg.net))
      throw ConfigError("resume refused: checkpoint architecture differs from config");
    net = std::move(ck.net);
    opt = std::move(ck.opt);
    start_iteration = ck.iteration;
  } else {
    net = ScoreNet(cfg.net, cfg.seed);
    opt = AdamOptimizer(net, cfg.train.learning_rate);
  }

  const auto source = make_source(cfg);
  const fs::path ck_path = out / "checkpoint.json";
  auto hook = [&](std::int64_t iter, const ScoreNet& n, const AdamOptimizer& o) {
    save_checkpoint(ck_path.string(), n, o, iter, hash);
  };

  // train.iterations is the total target; a resumed run covers the remainder
  TrainConfig tc = cfg.train;
  tc.iterations = cfg.train.iterations - start_iteration;
  if (tc.iterations < 0)
    throw ConfigError("checkpoint is already past train.iterations (" +
                      std::to_string(start_iteration) + " > " +
                      std::to_string(cfg.train.iterations) + ")");

  TrainResult result;
  try {
    result = train(net, opt, cfg.process, *source, tc, start_iteration, hook);
  } catch (const NumericError&) {
    // a diagnostic checkpoint was written by the hook at the failing iteration
    save_checkpoint((out / "checkpoint.diverged.json").string(), net, opt, -1, hash);
    throw;
  }
  save_checkpoint(ck_path.string(), net, opt, start_iteration + result.iterations_run, hash);

  const fs::path trace = out / "loss_trace.csv";
  Eigen::MatrixXd rows(result.loss_trace.size(), 2);
  for (std::size_t i = 0; i < result.loss_trace.size(); ++i) {
    rows(i, 0) = static_cast<double>(result.loss_trace[i].first);
    rows(i, 1) = result.loss_trace[i].second;
  }
  // appended to the existing trace when resuming
  if (start_iteration > 0 && fs::exists(trace)) {
    const Eigen::MatrixXd old = read_csv(trace.string());
    Eigen::MatrixXd merged(old.rows() + rows.rows(), 2);
    merged << old, rows;
    rows = merged;
  }
  write_csv(trace.string(), {"iteration", "loss"}, rows);

  ManifestWriter manifest(out, config_json, "train");
  manifest.add_file(ck_path, "checkpoint",
                    {{"iterations", start_iteration + result.iterations_run}});
  manifest.add_file(trace, "loss_trace");
}

void cmd_sample(const json& config_json, bool analytic,
                const std::optional<std::string>& checkpoint_path) {
  const RunConfig cfg = parse_run_config(config_json);
  const fs::path out = ensure_out_dir(cfg);

  std::unique_ptr<ScoreSource> score;
  if (analytic) {
    score = std::make_unique<AnalyticScoreSource>(mixture_from_config(cfg), cfg.process);
  } else {
    fs::path ck = checkpoint_path ? fs::path(*checkpoint_path) : out / "checkpoint.json";
    Checkpoint loaded = load_checkpoint(ck.string());
    if (!(loaded.net_config == cfg.net))
      throw ConfigError("checkpoint architecture does not match this config");
    score = std::make_unique<NetScoreSource>(std::move(loaded.net), cfg.process);
  }

  const SamplerConfig sc = sampler_config(cfg, !analytic);
  const SampleSet samples = cfg.sampler.kind == SamplerKind::ode_adaptive
                                ? sample_probability_flow(*score, cfg.process, sc)
                                : sample_reverse_sde(*score, cfg.process, sc);

  const bool with_eta = cfg.sampler.write_eta && cfg.process.is_active();
  Eigen::MatrixXd rows(samples.x.rows(), samples.x.cols() + (with_eta ? samples.eta.cols() : 0));
  rows.leftCols(samples.x.cols()) = samples.x;
  if (with_eta) rows.rightCols(samples.eta.cols()) = samples.eta;
  const fs::path p = out / "samples.csv";
  write_csv(p.string(), sample_header(static_cast<int>(samples.x.cols()), with_eta), rows);

  ManifestWriter manifest(out, config_json, "sample");
  manifest.add_file(p, "samples",
                    {{"n_samples", cfg.sampler.n_samples}, {"analytic", analytic}});

  if (cfg.dataset.kind == DatasetKind::ising) {
    const int L = cfg.dataset.ising_L;
    const Eigen::MatrixXi spins = discretize_spins(samples.x);
    if (cfg.sampler.ising_output == "per_sample") {
      const fs::path dir = out / "spins";
      fs::create_directories(dir);
      for (Eigen::Index i = 0; i < spins.rows(); ++i) {
        IsingLattice lat;
        lat.L = L;
        lat.temperature = cfg.dataset.ising_T;
        lat.seed = cfg.seed;
        lat.spins.resize(L, L);
        for (int r = 0; r < L; ++r)
          for (int c = 0; c < L; ++c) lat.spins(r, c) = spins(i, r * L + c);
        char name[32];
        std::snprintf(name, sizeof(name), "sample_%05lld.txt", static_cast<long long>(i));
        write_lattice((dir / name).string(), lat);
      }
      manifest.add_file(dir, "spin_dir", {{"count", spins.rows()}});
    } else {
      const fs::path sp = out / "samples_spins.txt";
      std::ofstream sf(sp);
      for (Eigen::Index i = 0; i < spins.rows(); ++i) {
        for (int r = 0; r < L; ++r) {
          for (int c = 0; c < L; ++c) {
            if (c) sf << ' ';
            sf << spins(i, r * L + c);
          }
          sf << '\n';
        }
        sf << '\n';
      }
      manifest.add_file(sp, "spins_stacked", {{"count", spins.rows()}});
    }
  }
  log_info("sample: wrote " + p.string());
}

namespace {

std::vector<Eigen::MatrixXi> load_spin_set(const std::string& path, int L) {
  std::vector<Eigen::MatrixXi> grids;
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(path))
      if (e.path().extension() == ".txt" && e.path().filename().string() != "manifest.json")
        files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) grids.push_back(read_lattice(f.string()).spins);
  } else {
    // stacked blocks of L lines separated by blank lines
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open " + path);
    std::vector<std::string> block;
    std::string line;
    auto flush = [&] {
      if (block.empty()) return;
      Eigen::MatrixXi g(block.size(), block.size());
      for (std::size_t i = 0; i < block.size(); ++i) {
        std::stringstream ss(block[i]);
        int v;
        for (std::size_t j = 0; j < block.size(); ++j) {
          if (!(ss >> v) || (v != 1 && v != -1))
            throw InvalidInputError(path + ": malformed stacked spin block");
          g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
        }
      }
      grids.push_back(std::move(g));
      block.clear();
    };
    while (std::getline(in, line)) {
      if (line.empty() || line == "\r")
        flush();
      else
        block.push_back(line);
    }
    flush();
  }
  if (grids.empty()) throw InvalidInputError(path + ": no lattices found");
  for (const auto& g : grids)
    if (g.rows() != L)
      throw InvalidInputError(path + ": lattice size does not match config (" +
                              std::to_string(g.rows()) + " vs " + std::to_string(L) + ")");
  return grids;
}

void print_metric_row(std::ostream& os, const std::string& name, double value) {
  os << name << " = " << fmt_g9(value) << "\n";
}

}  // namespace

void cmd_eval(const json& config_json, const std::vector<std::string>& sample_paths,
              const std::vector<std::string>& reference_paths) {
  const RunConfig cfg = parse_run_config(config_json);
  if (sample_paths.empty() || reference_paths.empty())
    throw ConfigError("eval: need at least one --samples and one --reference path");
  const fs::path out = ensure_out_dir(cfg);

  std::vector<std::pair<std::string, double>> results;
  bool pass = true;

  if (cfg.dataset.kind == DatasetKind::ising) {
    const int L = cfg.dataset.ising_L;
    std::vector<int> ls = cfg.metrics.filter_sizes;
    if (ls.empty())
      for (int l = 1; l <= L / 2; ++l) ls.push_back(l);
    std::vector<Eigen::MatrixXi> gen, ref;
    for (const auto& p : sample_paths) {
      auto g = load_spin_set(p, L);
      gen.insert(gen.end(), g.begin(), g.end());
    }
    for (const auto& p : reference_paths) {
      auto g = load_spin_set(p, L);
      ref.insert(ref.end(), g.begin(), g.end());
    }
    const ConvolutionCurve cg = convolution_metric(gen, ls);
    const ConvolutionCurve cr = convolution_metric(ref, ls);
    Eigen::MatrixXd rows(ls.size(), 3);
    for (std::size_t i = 0; i < ls.size(); ++i) {
      rows(i, 0) = ls[i];
      rows(i, 1) = cg.values[i];
      rows(i, 2) = cr.values[i];
    }
    write_csv((out / "convolution_curves.csv").string(), {"l", "generated", "reference"}, rows);
    const double gap = convolution_gap(cg, cr);
    results.emplace_back("convolution_gap", gap);
    if (cfg.metrics.max_convolution_gap && gap > *cfg.metrics.max_convolution_gap) pass = false;
  } else {
    auto load_concat = [](const std::vector<std::string>& paths, const char* what) {
      Eigen::MatrixXd all;
      for (const auto& p : paths) {
        const Eigen::MatrixXd m = read_csv(p);
        if (all.rows() == 0) {
          all = m;
        } else {
          if (m.cols() != all.cols())
            throw InvalidInputError(std::string("eval: ") + what + " column mismatch at " + p);
          all.conservativeResize(all.rows() + m.rows(), all.cols());
          all.bottomRows(m.rows()) = m;
        }
      }
      return all;
    };
    const Eigen::MatrixXd gen = load_concat(sample_paths, "samples");
    const Eigen::MatrixXd ref = load_concat(reference_paths, "reference");
    if (gen.cols() != ref.cols())
      throw InvalidInputError("eval: sample/reference dimension mismatch");
    const double ed = energy_distance(gen, ref);
    results.emplace_back("energy_distance", ed);
    if (cfg.metrics.max_energy_distance && ed > *cfg.metrics.max_energy_distance) pass = false;

    if (cfg.dataset.kind == DatasetKind::diamond || cfg.dataset.kind == DatasetKind::mixture) {
      const GaussianMixture mix = mixture_from_config(cfg);
      const MixtureRecoveryReport rep = mixture_recovery(gen, mix);
      results.emplace_back("unassigned_fraction", rep.unassigned_fraction);
      results.emplace_back("min_peak_frequency", rep.frequencies.minCoeff());
      results.emplace_back("max_peak_frequency", rep.frequencies.maxCoeff());
      Eigen::MatrixXd rows(mix.peaks(), 3);
      for (int a = 0; a < mix.peaks(); ++a) {
        rows(a, 0) = a;
        rows(a, 1) = rep.frequencies[a];
        rows(a, 2) = rep.stds[a];
      }
      write_csv((out / "mixture_recovery.csv").string(), {"peak", "frequency", "std"}, rows);
    }
  }

  {
    std::ofstream mf(out / "metrics.csv");
    mf << "metric,value\n";
    for (const auto& [name, value] : results) mf << name << ',' << fmt_g9(value) << '\n';
  }
  for (const auto& [name, value] : results) print_metric_row(std::cout, name, value);

  ManifestWriter manifest(out, config_json, "eval");
  manifest.add_file(out / "metrics.csv", "metrics");

  if ((cfg.metrics.max_energy_distance || cfg.metrics.max_convolution_gap)) {
    std::cout << (pass ? "PASS" : "FAIL") << "\n";
    if (!pass) throw NumericError("eval: metric thresholds exceeded");
  }
}

void cmd_theory(const json& config_json) {
  const RunConfig cfg = parse_run_config(config_json);
  const fs::path out = ensure_out_dir(cfg);

  Eigen::MatrixXd c0;
  switch (cfg.dataset.kind) {
    case DatasetKind::diamond:
    case DatasetKind::mixture:
      c0 = mixture_from_config(cfg).covariance();
      break;
    default: {
      const Eigen::MatrixXd m = training_matrix(cfg);
      const Eigen::RowVectorXd mean = m.colwise().mean();
      const Eigen::MatrixXd centered = m.rowwise() - mean;
      c0 = centered.transpose() * centered / static_cast<double>(m.rows() - 1);
    }
  }

  // passive side of the comparison runs at the same temperature (T_p = T_a)
  const double T_cmp = cfg.process.is_active() ? cfg.process.T_a : cfg.process.T_p;
  const double tau = cfg.process.is_active() ? cfg.process.tau : 0.5;
  const SpeciationTimes st = speciation_times(c0, T_cmp, T_cmp, tau);
  std::cout << "speciation: t_s_passive = " << fmt_g9(st.t_passive)
            << "  t_s_active = " << fmt_g9(st.t_active) << "  (tau = " << fmt_g9(tau)
            << ", T = " << fmt_g9(T_cmp) << ")\n";

  const std::vector<double> times{0.0, tau / 4.0, tau / 2.0, tau, 2.0 * tau, 0.5, 1.0};
  const std::vector<double> modes{1.0, 2.0, 4.0, 8.0};
  Eigen::MatrixXd rows(times.size() * modes.size(), 6);
  int r = 0;
  for (const double km : modes)
    for (const double t : times) {
      const FourierRates fr = fourier_decay_rates(km, 1.0, t, T_cmp, T_cmp, tau);
      rows.row(r++) << km, t, fr.passive, fr.active, fr.passive_small_t, fr.active_small_t;
    }
  const fs::path fp = out / "theory.csv";
  {
    std::ofstream tf(fp);
    tf << "k_mode,t,passive_rate,active_rate,passive_small_t,active_small_t\n";
    for (int i = 0; i < rows.rows(); ++i) {
      for (int j = 0; j < 6; ++j) {
        if (j) tf << ',';
        tf << fmt_g9(rows(i, j));
      }
      tf << '\n';
    }
  }
  std::ofstream sf(out / "speciation.csv");
  sf << "t_s_passive,t_s_active,tau,T\n"
     << fmt_g9(st.t_passive) << ',' << fmt_g9(st.t_active) << ',' << fmt_g9(tau) << ','
     << fmt_g9(T_cmp) << "\n";

  ManifestWriter manifest(out, config_json, "theory");
  manifest.add_file(fp, "fourier_table");
  manifest.add_file(out / "speciation.csv", "speciation");
  std::cout << "theory: wrote " << fp.string() << "\n";
}

}  // namespace actdiff
