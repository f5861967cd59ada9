#pragma once

#include <string>

#include "actdiff/mixture.hpp"
#include "actdiff/rng.hpp"

namespace actdiff {

struct NormalizationRecord {
  bool applied = false;
  Eigen::VectorXd shift;  // per-column mean removed
  Eigen::VectorXd scale;  // per-column std divided out
};

struct Dataset2D {
  Eigen::MatrixXd samples;  // N x 2
  std::string provenance;
  NormalizationRecord norm;
};

/// Nine equal-weight isotropic Gaussians: one at the origin and eight on a
/// ring of radius r (axes and diagonals), each with variance sigma^2.
GaussianMixture diamond_mixture(double r, double sigma);

enum class SwissRollVariant { single, multiple, overlapping };

/// 2D spiral r(theta) = c * theta with Gaussian jitter. The constants below
/// are frozen so generated clouds are reproducible:
///   c = 1/(7 pi), theta in [pi, 7 pi]   (3 turns, outer radius 1)
///   multiple:    3 copies at (-2.5, 0), (0, 0), (2.5, 0)
///   overlapping: 5 copies at (0, 0) and (+-0.7, +-0.7)
Dataset2D swiss_roll(int n, double noise, SwissRollVariant variant, std::uint64_t seed);

/// Reads a two-column numeric CSV (one header line). With normalize = true
/// columns are standardized to mean 0 / variance 1 and the applied shift and
/// scale are retained so samples can be mapped back to original units.
Dataset2D ingest_csv_2d(const std::string& path, bool normalize);

/// Undo a normalization record (rows of `samples` are points).
Eigen::MatrixXd denormalize(const NormalizationRecord& norm, const Eigen::MatrixXd& samples);

}  // namespace actdiff
