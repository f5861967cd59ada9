#include "actdiff/checkpoint.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

#include "actdiff/errors.hpp"

namespace actdiff {
namespace {

using nlohmann::json;

constexpr char kB64Chars[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string b64_encode(const double* data, std::size_t count) {
  const auto* bytes = reinterpret_cast<const unsigned char*>(data);
  const std::size_t n = count * sizeof(double);
  std::string out;
  out.reserve((n + 2) / 3 * 4);
  for (std::size_t i = 0; i < n; i += 3) {
    unsigned v = bytes[i] << 16;
    if (i + 1 < n) v |= bytes[i + 1] << 8;
    if (i + 2 < n) v |= bytes[i + 2];
    out.push_back(kB64Chars[(v >> 18) & 63]);
    out.push_back(kB64Chars[(v >> 12) & 63]);
    out.push_back(i + 1 < n ? kB64Chars[(v >> 6) & 63] : '=');
    out.push_back(i + 2 < n ? kB64Chars[v & 63] : '=');
  }
  return out;
}

std::vector<double> b64_decode(const std::string& s, std::size_t expect_count) {
  static const auto lut = [] {
    std::array<int, 256> t{};
    t.fill(-1);
    for (int i = 0; i < 64; ++i) t[static_cast<unsigned char>(kB64Chars[i])] = i;
    return t;
  }();
  std::vector<unsigned char> bytes;
  bytes.reserve(s.size() / 4 * 3);
  unsigned v = 0;
  int bits = 0;
  for (char ch : s) {
    if (ch == '=') break;
    const int x = lut[static_cast<unsigned char>(ch)];
    if (x < 0) throw ConfigError("checkpoint: invalid base64 payload");
    v = (v << 6) | static_cast<unsigned>(x);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      bytes.push_back(static_cast<unsigned char>((v >> bits) & 0xFF));
    }
  }
  if (bytes.size() != expect_count * sizeof(double))
    throw ConfigError("checkpoint: payload size mismatch");
  std::vector<double> out(expect_count);
  std::memcpy(out.data(), bytes.data(), bytes.size());
  return out;
}

json tensor_to_json(const std::string& name, const Eigen::MatrixXd& m) {
  return json{{"name", name},
              {"shape", {m.rows(), m.cols()}},
              {"data", b64_encode(m.data(), static_cast<std::size_t>(m.size()))}};
}

Eigen::MatrixXd tensor_from_json(const json& j) {
  const auto shape = j.at("shape");
  const Eigen::Index rows = shape.at(0).get<Eigen::Index>();
  const Eigen::Index cols = shape.at(1).get<Eigen::Index>();
  const auto data = b64_decode(j.at("data").get<std::string>(),
                               static_cast<std::size_t>(rows * cols));
  Eigen::MatrixXd m(rows, cols);
  std::memcpy(m.data(), data.data(), data.size() * sizeof(double));
  return m;
}

json pack_params(const std::vector<Eigen::MatrixXd>& ws, const std::vector<Eigen::VectorXd>& bs,
                 const std::string& prefix) {
  json arr = json::array();
  for (std::size_t l = 0; l < ws.size(); ++l)
    arr.push_back(tensor_to_json(prefix + ".w" + std::to_string(l), ws[l]));
  for (std::size_t l = 0; l < bs.size(); ++l)
    arr.push_back(tensor_to_json(prefix + ".b" + std::to_string(l), bs[l]));
  return arr;
}

void unpack_params(const json& arr, std::vector<Eigen::MatrixXd>& ws,
                   std::vector<Eigen::VectorXd>& bs) {
  const std::size_t L = arr.size() / 2;
  ws.resize(L);
  bs.resize(L);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const Eigen::MatrixXd m = tensor_from_json(arr[i]);
    if (i < L)
      ws[i] = m;
    else
      bs[i - L] = m.col(0);
  }
}

}  // namespace

void save_checkpoint(const std::string& path, const ScoreNet& net, const AdamOptimizer& opt,
                     std::int64_t iteration, std::uint64_t config_hash) {
  const NetConfig& c = net.config();
  json j{{"format_version", 1},
         {"dtype", "float64-le"},
         {"config_hash", config_hash},
         {"iteration", iteration},
         {"adam_step", opt.step_count()},
         {"learning_rate", opt.learning_rate()},
         {"net_config",
          {{"data_dim", c.data_dim},
           {"with_eta", c.with_eta},
           {"hidden_layers", c.hidden_layers},
           {"hidden_units", c.hidden_units},
           {"time_features", c.time_features}}},
         {"tensors", pack_params(net.weights, net.biases, "net")}};

  j["adam_m"] = pack_params(opt.m.w, opt.m.b, "m");
  j["adam_v"] = pack_params(opt.v.w, opt.v.b, "v");

  std::ofstream out(path);
  if (!out) throw ConfigError("checkpoint: cannot open for writing: " + path);
  out << j.dump() << "\n";
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("checkpoint: cannot open: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("checkpoint: parse failure: ") + e.what());
  }
  if (j.at("format_version").get<int>() != 1)
    throw ConfigError("checkpoint: unsupported format version");
  if (j.at("dtype").get<std::string>() != "float64-le")
    throw ConfigError("checkpoint: unsupported dtype");

  Checkpoint ck;
  ck.config_hash = j.at("config_hash").get<std::uint64_t>();
  ck.iteration = j.at("iteration").get<std::int64_t>();
  const json& nc = j.at("net_config");
  ck.net_config.data_dim = nc.at("data_dim").get<int>();
  ck.net_config.with_eta = nc.at("with_eta").get<bool>();
  ck.net_config.hidden_layers = nc.at("hidden_layers").get<int>();
  ck.net_config.hidden_units = nc.at("hidden_units").get<int>();
  ck.net_config.time_features = nc.at("time_features").get<int>();

  ck.net = ScoreNet(ck.net_config, /*seed=*/0);
  unpack_params(j.at("tensors"), ck.net.weights, ck.net.biases);
  ck.opt = AdamOptimizer(ck.net, j.at("learning_rate").get<double>());
  unpack_params(j.at("adam_m"), ck.opt.m.w, ck.opt.m.b);
  unpack_params(j.at("adam_v"), ck.opt.v.w, ck.opt.v.b);
  ck.opt.set_step_count(j.at("adam_step").get<std::int64_t>());

  // shape consistency with the declared architecture
  const ScoreNet ref(ck.net_config, 0);
  if (ck.net.weights.size() != ref.weights.size())
    throw ConfigError("checkpoint: tensor count does not match architecture");
  for (std::size_t l = 0; l < ref.weights.size(); ++l) {
    if (ck.net.weights[l].rows() != ref.weights[l].rows() ||
        ck.net.weights[l].cols() != ref.weights[l].cols() ||
        ck.net.biases[l].size() != ref.biases[l].size())
      throw ConfigError("checkpoint: tensor shape does not match architecture");
  }
  return ck;
}

}  // namespace actdiff
