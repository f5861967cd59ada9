#include "actdiff/datasets.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "actdiff/errors.hpp"

namespace actdiff {

GaussianMixture diamond_mixture(double r, double sigma) {
  if (!(r > 0.0) || !(sigma > 0.0))
    throw InvalidInputError("diamond_mixture: r and sigma must be > 0");
  const double s = r / std::sqrt(2.0);
  GaussianMixture mix;
  mix.means.resize(9, 2);
  mix.means << 0, 0, r, 0, s, s, 0, r, -s, s, -r, 0, -s, -s, 0, -r, s, -s;
  mix.weights = Eigen::VectorXd::Constant(9, 1.0 / 9.0);
  mix.variances = Eigen::MatrixXd::Constant(9, 2, sigma * sigma);
  return mix;
}

namespace {

constexpr double kRollThetaMin = M_PI;
constexpr double kRollThetaMax = 7.0 * M_PI;
constexpr double kRollPitch = 1.0 / (7.0 * M_PI);  // outer radius 1
constexpr double kMultipleOffsets[3][2] = {{-2.5, 0.0}, {0.0, 0.0}, {2.5, 0.0}};
constexpr double kOverlapOffsets[5][2] = {
    {0.0, 0.0}, {0.7, 0.7}, {-0.7, 0.7}, {-0.7, -0.7}, {0.7, -0.7}};

}  // namespace

Dataset2D swiss_roll(int n, double noise, SwissRollVariant variant, std::uint64_t seed) {
  if (n < 0) throw InvalidInputError("swiss_roll: n must be >= 0");
  if (noise < 0.0) throw InvalidInputError("swiss_roll: noise must be >= 0");
  int copies = 1;
  const double(*offsets)[2] = nullptr;
  switch (variant) {
    case SwissRollVariant::single:
      copies = 1;
      break;
    case SwissRollVariant::multiple:
      copies = 3;
      offsets = kMultipleOffsets;
      break;
    case SwissRollVariant::overlapping:
      copies = 5;
      offsets = kOverlapOffsets;
      break;
  }
  Dataset2D ds;
  ds.samples.resize(n, 2);
  ds.provenance = "swiss_roll";
  CounterRng rng(seed, substream(rng_domain::kDataset, 0));
  for (int i = 0; i < n; ++i) {
    const int c = static_cast<int>(rng.uniform_int(copies));
    const double theta = rng.uniform(kRollThetaMin, kRollThetaMax);
    const double rad = kRollPitch * theta;
    double x = rad * std::cos(theta) + noise * rng.normal();
    double y = rad * std::sin(theta) + noise * rng.normal();
    if (offsets) {
      x += offsets[c][0];
      y += offsets[c][1];
    }
    ds.samples(i, 0) = x;
    ds.samples(i, 1) = y;
  }
  return ds;
}

namespace {

double parse_field(const std::string& field, const std::string& path, int line_no) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  while (first < last && (*first == ' ' || *first == '\t')) ++first;
  while (last > first && (last[-1] == ' ' || last[-1] == '\t' || last[-1] == '\r')) --last;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    throw InvalidInputError(path + ":" + std::to_string(line_no) + ": malformed numeric field '" +
                            field + "'");
  return v;
}

}  // namespace

Dataset2D ingest_csv_2d(const std::string& path, bool normalize) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("ingest_csv_2d: cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw InvalidInputError("ingest_csv_2d: " + path + " is empty (header expected)");

  std::vector<double> values;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw InvalidInputError(path + ":" + std::to_string(line_no) + ": expected two comma-separated columns");
    const std::string c0 = line.substr(0, comma);
    std::string c1 = line.substr(comma + 1);
    if (c1.find(',') != std::string::npos)
      throw InvalidInputError(path + ":" + std::to_string(line_no) + ": expected exactly two columns");
    values.push_back(parse_field(c0, path, line_no));
    values.push_back(parse_field(c1, path, line_no));
  }
  if (values.empty()) throw InvalidInputError("ingest_csv_2d: " + path + " has no data rows");

  Dataset2D ds;
  const auto n = static_cast<Eigen::Index>(values.size() / 2);
  ds.samples.resize(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    ds.samples(i, 0) = values[2 * i];
    ds.samples(i, 1) = values[2 * i + 1];
  }
  ds.provenance = "csv:" + path;
  if (normalize) {
    ds.norm.applied = true;
    ds.norm.shift = ds.samples.colwise().mean();
    ds.samples.rowwise() -= ds.norm.shift.transpose();
    Eigen::VectorXd sd(2);
    for (int j = 0; j < 2; ++j)
      sd[j] = std::sqrt(ds.samples.col(j).squaredNorm() / static_cast<double>(n));
    for (int j = 0; j < 2; ++j) {
      if (sd[j] <= 0.0) sd[j] = 1.0;  // constant column: leave centered
      ds.samples.col(j) /= sd[j];
    }
    ds.norm.scale = sd;
  }
  return ds;
}

Eigen::MatrixXd denormalize(const NormalizationRecord& norm, const Eigen::MatrixXd& samples) {
  if (!norm.applied) return samples;
  if (samples.cols() != norm.scale.size())
    throw InvalidInputError("denormalize: column count mismatch");
  Eigen::MatrixXd out = samples;
  for (Eigen::Index j = 0; j < out.cols(); ++j)
    out.col(j) = out.col(j) * norm.scale[j] + Eigen::VectorXd::Constant(out.rows(), norm.shift[j]);
  return out;
}

}  // namespace actdiff
