#include "actdiff/config.hpp"

#include <fstream>
#include <set>

#include "actdiff/datasets.hpp"
#include "actdiff/errors.hpp"

namespace actdiff {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config: " + path + ": " + what);
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

void reject_unknown(const json& j, const std::string& path, const std::set<std::string>& known) {
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) fail(path + "/" + key, "unknown key");
}

double get_num(const json& j, const std::string& path, const char* key, double fallback,
               bool required = false) {
  if (!j.contains(key)) {
    if (required) fail(path + "/" + key, "missing required key");
    return fallback;
  }
  if (!j.at(key).is_number()) fail(path + "/" + key, "expected a number");
  return j.at(key).get<double>();
}

std::int64_t get_int(const json& j, const std::string& path, const char* key,
                     std::int64_t fallback, bool required = false) {
  if (!j.contains(key)) {
    if (required) fail(path + "/" + key, "missing required key");
    return fallback;
  }
  if (!j.at(key).is_number_integer()) fail(path + "/" + key, "expected an integer");
  return j.at(key).get<std::int64_t>();
}

bool get_bool(const json& j, const std::string& path, const char* key, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) fail(path + "/" + key, "expected a boolean");
  return j.at(key).get<bool>();
}

std::string get_str(const json& j, const std::string& path, const char* key,
                    const std::string& fallback, bool required = false) {
  if (!j.contains(key)) {
    if (required) fail(path + "/" + key, "missing required key");
    return fallback;
  }
  if (!j.at(key).is_string()) fail(path + "/" + key, "expected a string");
  return j.at(key).get<std::string>();
}

DiffusionParams parse_process(const json& j) {
  require_object(j, "/process");
  reject_unknown(j, "/process", {"kind", "k", "T", "T_p", "T_a", "tau", "t_f"});
  const std::string kind = get_str(j, "/process", "kind", "", true);
  DiffusionParams p;
  p.k = get_num(j, "/process", "k", 1.0);
  p.t_f = get_num(j, "/process", "t_f", 1.0);
  if (kind == "passive") {
    p.kind = ProcessKind::passive;
    if (j.contains("T") && j.contains("T_p")) fail("/process", "give either T or T_p, not both");
    p.T_p = get_num(j, "/process", j.contains("T") ? "T" : "T_p", 1.0);
    if (j.contains("T_a") || j.contains("tau"))
      fail("/process", "T_a/tau are not valid for the passive process");
  } else if (kind == "active") {
    p.kind = ProcessKind::active;
    p.T_a = get_num(j, "/process", "T_a", 1.0, true);
    p.tau = get_num(j, "/process", "tau", 0.0, true);
    p.T_p = get_num(j, "/process", "T_p", 0.0);
    if (j.contains("T")) fail("/process/T", "use T_p for the active process");
  } else {
    fail("/process/kind", "must be 'passive' or 'active'");
  }
  try {
    p.validate();
  } catch (const InvalidInputError& e) {
    fail("/process", e.what());
  }
  return p;
}

DatasetConfig parse_dataset(const json& j) {
  require_object(j, "/dataset");
  reject_unknown(j, "/dataset",
                 {"kind", "n_samples", "diamond", "mixture", "swiss_roll", "ising", "csv", "path"});
  DatasetConfig d;
  const std::string kind = get_str(j, "/dataset", "kind", "", true);
  d.n_samples = static_cast<int>(get_int(j, "/dataset", "n_samples", d.n_samples));
  if (d.n_samples < 0) fail("/dataset/n_samples", "must be >= 0");
  d.path = get_str(j, "/dataset", "path", "");
  if (kind == "diamond") {
    d.kind = DatasetKind::diamond;
    if (j.contains("diamond")) {
      const json& dj = j.at("diamond");
      require_object(dj, "/dataset/diamond");
      reject_unknown(dj, "/dataset/diamond", {"r", "sigma"});
      d.diamond_r = get_num(dj, "/dataset/diamond", "r", d.diamond_r);
      d.diamond_sigma = get_num(dj, "/dataset/diamond", "sigma", d.diamond_sigma);
    }
  } else if (kind == "mixture") {
    d.kind = DatasetKind::mixture;
    if (!j.contains("mixture")) fail("/dataset/mixture", "missing required key");
    const json& mj = j.at("mixture");
    require_object(mj, "/dataset/mixture");
    reject_unknown(mj, "/dataset/mixture", {"peaks"});
    if (!mj.contains("peaks") || !mj.at("peaks").is_array() || mj.at("peaks").empty())
      fail("/dataset/mixture/peaks", "expected a nonempty array");
    int idx = 0;
    for (const json& pj : mj.at("peaks")) {
      const std::string pp = "/dataset/mixture/peaks/" + std::to_string(idx++);
      require_object(pj, pp);
      reject_unknown(pj, pp, {"weight", "mean", "variance"});
      MixturePeak peak;
      peak.weight = get_num(pj, pp, "weight", 1.0, true);
      for (const char* key : {"mean", "variance"}) {
        if (!pj.contains(key) || !pj.at(key).is_array()) fail(pp + "/" + key, "expected an array");
        Eigen::VectorXd v(pj.at(key).size());
        int vi = 0;
        for (const json& x : pj.at(key)) {
          if (!x.is_number()) fail(pp + "/" + key, "expected numbers");
          v[vi++] = x.get<double>();
        }
        (std::string(key) == "mean" ? peak.mean : peak.variance) = v;
      }
      d.mixture_peaks.push_back(std::move(peak));
    }
  } else if (kind == "swiss_roll") {
    d.kind = DatasetKind::swiss_roll;
    if (j.contains("swiss_roll")) {
      const json& sj = j.at("swiss_roll");
      require_object(sj, "/dataset/swiss_roll");
      reject_unknown(sj, "/dataset/swiss_roll", {"variant", "noise"});
      const std::string var = get_str(sj, "/dataset/swiss_roll", "variant", "single");
      if (var == "single")
        d.roll_variant = SwissRollVariant::single;
      else if (var == "multiple")
        d.roll_variant = SwissRollVariant::multiple;
      else if (var == "overlapping")
        d.roll_variant = SwissRollVariant::overlapping;
      else
        fail("/dataset/swiss_roll/variant", "must be single|multiple|overlapping");
      d.roll_noise = get_num(sj, "/dataset/swiss_roll", "noise", d.roll_noise);
    }
  } else if (kind == "ising") {
    d.kind = DatasetKind::ising;
    if (j.contains("ising")) {
      const json& ij = j.at("ising");
      require_object(ij, "/dataset/ising");
      reject_unknown(ij, "/dataset/ising", {"L", "T", "steps", "count"});
      d.ising_L = static_cast<int>(get_int(ij, "/dataset/ising", "L", d.ising_L));
      d.ising_T = get_num(ij, "/dataset/ising", "T", d.ising_T);
      d.ising_steps = get_int(ij, "/dataset/ising", "steps", d.ising_steps);
      d.ising_count = static_cast<int>(get_int(ij, "/dataset/ising", "count", d.ising_count));
      if (d.ising_L < 2) fail("/dataset/ising/L", "must be >= 2");
      if (!(d.ising_T > 0.0)) fail("/dataset/ising/T", "must be > 0");
    }
  } else if (kind == "csv") {
    d.kind = DatasetKind::csv;
    if (!j.contains("csv")) fail("/dataset/csv", "missing required key");
    const json& cj = j.at("csv");
    require_object(cj, "/dataset/csv");
    reject_unknown(cj, "/dataset/csv", {"path", "normalize"});
    d.csv_path = get_str(cj, "/dataset/csv", "path", "", true);
    d.csv_normalize = get_bool(cj, "/dataset/csv", "normalize", true);
  } else {
    fail("/dataset/kind", "must be diamond|mixture|swiss_roll|ising|csv");
  }
  return d;
}

}  // namespace

nlohmann::json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("config: " + path + ": " + e.what());
  }
  return j;
}

RunConfig parse_run_config(const json& j) {
  require_object(j, "/");
  reject_unknown(j, "", {"process", "dataset", "net", "train", "sampler", "metrics", "output_dir",
                         "seed", "threads"});
  if (!j.contains("process")) fail("/process", "missing required section");
  if (!j.contains("dataset")) fail("/dataset", "missing required section");

  RunConfig cfg;
  cfg.process = parse_process(j.at("process"));
  cfg.dataset = parse_dataset(j.at("dataset"));
  cfg.output_dir = get_str(j, "", "output_dir", ".");
  cfg.seed = static_cast<std::uint64_t>(get_int(j, "", "seed", 0));
  cfg.threads = static_cast<int>(get_int(j, "", "threads", 1));
  if (cfg.threads < 1) fail("/threads", "must be >= 1");

  if (j.contains("net")) {
    const json& nj = j.at("net");
    require_object(nj, "/net");
    reject_unknown(nj, "/net", {"hidden_layers", "hidden_units", "time_features"});
    cfg.net.hidden_layers = static_cast<int>(get_int(nj, "/net", "hidden_layers", 4));
    cfg.net.hidden_units = static_cast<int>(get_int(nj, "/net", "hidden_units", 128));
    cfg.net.time_features = static_cast<int>(get_int(nj, "/net", "time_features", 16));
    if (cfg.net.hidden_layers < 1) fail("/net/hidden_layers", "must be >= 1");
    if (cfg.net.hidden_units < 1) fail("/net/hidden_units", "must be >= 1");
    if (cfg.net.time_features < 2 || cfg.net.time_features % 2)
      fail("/net/time_features", "must be even and >= 2");
  }
  cfg.net.with_eta = cfg.process.is_active();

  if (j.contains("train")) {
    const json& tj = j.at("train");
    require_object(tj, "/train");
    reject_unknown(tj, "/train",
                   {"iterations", "batch_size", "learning_rate", "t_min_frac", "log_every",
                    "checkpoint_every"});
    cfg.train.iterations = get_int(tj, "/train", "iterations", 0);
    cfg.train.batch_size = static_cast<int>(get_int(tj, "/train", "batch_size", 512));
    cfg.train.learning_rate = get_num(tj, "/train", "learning_rate", 1e-3);
    cfg.train.t_min_frac = get_num(tj, "/train", "t_min_frac", 1e-3);
    cfg.train.log_every = static_cast<int>(get_int(tj, "/train", "log_every", 100));
    cfg.train.checkpoint_every = static_cast<int>(get_int(tj, "/train", "checkpoint_every", 0));
    if (cfg.train.log_every < 1) fail("/train/log_every", "must be >= 1");
    if (!(cfg.train.t_min_frac > 0.0) || cfg.train.t_min_frac >= 1.0)
      fail("/train/t_min_frac", "must be in (0, 1)");
    try {
      cfg.train.validate();
    } catch (const InvalidInputError& e) {
      fail("/train", e.what());
    }
  }
  cfg.train.seed = cfg.seed;

  if (j.contains("sampler")) {
    const json& sj = j.at("sampler");
    require_object(sj, "/sampler");
    reject_unknown(sj, "/sampler",
                   {"kind", "n_steps", "denoise_last", "ode_abs_tol", "ode_rel_tol", "n_samples",
                    "write_eta", "ising_output"});
    const std::string kind = get_str(sj, "/sampler", "kind", "euler_maruyama");
    if (kind == "euler_maruyama")
      cfg.sampler.kind = SamplerKind::euler_maruyama;
    else if (kind == "ode_adaptive")
      cfg.sampler.kind = SamplerKind::ode_adaptive;
    else
      fail("/sampler/kind", "must be euler_maruyama|ode_adaptive");
    cfg.sampler.n_steps = static_cast<int>(get_int(sj, "/sampler", "n_steps", 500));
    cfg.sampler.denoise_last = get_bool(sj, "/sampler", "denoise_last", false);
    cfg.sampler.ode_abs_tol = get_num(sj, "/sampler", "ode_abs_tol", 1e-6);
    cfg.sampler.ode_rel_tol = get_num(sj, "/sampler", "ode_rel_tol", 1e-6);
    cfg.sampler.n_samples = static_cast<int>(get_int(sj, "/sampler", "n_samples", 10000));
    cfg.sampler.write_eta = get_bool(sj, "/sampler", "write_eta", false);
    cfg.sampler.ising_output = get_str(sj, "/sampler", "ising_output", "stacked");
    if (cfg.sampler.ising_output != "stacked" && cfg.sampler.ising_output != "per_sample")
      fail("/sampler/ising_output", "must be stacked|per_sample");
    if (cfg.sampler.n_steps < 1) fail("/sampler/n_steps", "must be >= 1");
    if (!(cfg.sampler.ode_abs_tol > 0.0) || !(cfg.sampler.ode_rel_tol > 0.0))
      fail("/sampler", "ODE tolerances must be > 0");
    if (cfg.sampler.n_samples < 0) fail("/sampler/n_samples", "must be >= 0");
  }

  if (j.contains("metrics")) {
    const json& mj = j.at("metrics");
    require_object(mj, "/metrics");
    reject_unknown(mj, "/metrics", {"max_energy_distance", "max_convolution_gap", "filter_sizes"});
    if (mj.contains("max_energy_distance"))
      cfg.metrics.max_energy_distance = get_num(mj, "/metrics", "max_energy_distance", 0.0);
    if (mj.contains("max_convolution_gap"))
      cfg.metrics.max_convolution_gap = get_num(mj, "/metrics", "max_convolution_gap", 0.0);
    if (mj.contains("filter_sizes")) {
      if (!mj.at("filter_sizes").is_array()) fail("/metrics/filter_sizes", "expected an array");
      for (const json& x : mj.at("filter_sizes")) {
        if (!x.is_number_integer() || x.get<int>() < 1)
          fail("/metrics/filter_sizes", "expected positive integers");
        cfg.metrics.filter_sizes.push_back(x.get<int>());
      }
    }
  }

  // derived network input dimension
  switch (cfg.dataset.kind) {
    case DatasetKind::ising:
      cfg.net.data_dim = cfg.dataset.ising_L * cfg.dataset.ising_L;
      break;
    case DatasetKind::mixture:
      cfg.net.data_dim = static_cast<int>(cfg.dataset.mixture_peaks.front().mean.size());
      break;
    default:
      cfg.net.data_dim = 2;
  }
  return cfg;
}

std::uint64_t config_hash(const json& j) {
  const std::string dump = j.dump();  // nlohmann objects iterate in sorted key order
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const unsigned char c : dump) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

GaussianMixture mixture_from_config(const RunConfig& cfg) {
  if (cfg.dataset.kind == DatasetKind::diamond)
    return diamond_mixture(cfg.dataset.diamond_r, cfg.dataset.diamond_sigma);
  if (cfg.dataset.kind != DatasetKind::mixture)
    throw ConfigError("config: dataset kind has no analytic mixture form");
  const auto& peaks = cfg.dataset.mixture_peaks;
  const auto K = static_cast<Eigen::Index>(peaks.size());
  const auto d = peaks.front().mean.size();
  GaussianMixture mix;
  mix.weights.resize(K);
  mix.means.resize(K, d);
  mix.variances.resize(K, d);
  for (Eigen::Index a = 0; a < K; ++a) {
    if (peaks[a].mean.size() != d || peaks[a].variance.size() != d)
      throw ConfigError("config: mixture peaks must share a dimension");
    mix.weights[a] = peaks[a].weight;
    mix.means.row(a) = peaks[a].mean.transpose();
    mix.variances.row(a) = peaks[a].variance.transpose();
  }
  const double total = mix.weights.sum();
  if (!(total > 0.0)) throw ConfigError("config: mixture weights must be positive");
  mix.weights /= total;
  mix.validate();
  return mix;
}

}  // namespace actdiff
