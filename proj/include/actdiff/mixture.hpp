#pragma once

#include <Eigen/Core>

#include "actdiff/errors.hpp"
#include "actdiff/rng.hpp"

namespace actdiff {

/// Gaussian mixture target density: weights p_a, per-peak per-dimension
/// means and variances. All peaks share the data dimension.
struct GaussianMixture {
  Eigen::VectorXd weights;   // K
  Eigen::MatrixXd means;     // K x d
  Eigen::MatrixXd variances; // K x d, entries > 0

  int peaks() const { return static_cast<int>(weights.size()); }
  int dim() const { return static_cast<int>(means.cols()); }

  void validate() const {
    if (peaks() == 0) throw InvalidInputError("GaussianMixture: empty mixture");
    if (means.rows() != peaks() || variances.rows() != peaks() || variances.cols() != means.cols())
      throw InvalidInputError("GaussianMixture: inconsistent shapes");
    if ((weights.array() < 0.0).any()) throw InvalidInputError("GaussianMixture: negative weight");
    if (std::abs(weights.sum() - 1.0) > 1e-12) throw InvalidInputError("GaussianMixture: weights must sum to 1");
    if ((variances.array() <= 0.0).any()) throw InvalidInputError("GaussianMixture: variances must be > 0");
    if (!means.allFinite() || !variances.allFinite()) throw InvalidInputError("GaussianMixture: non-finite entries");
  }

  /// n independent draws, one row per sample.
  Eigen::MatrixXd sample(int n, CounterRng& rng) const {
    validate();
    Eigen::MatrixXd out(n, dim());
    // cumulative weights for inverse-cdf peak selection
    Eigen::VectorXd cum(peaks());
    double acc = 0.0;
    for (int a = 0; a < peaks(); ++a) {
      acc += weights[a];
      cum[a] = acc;
    }
    for (int i = 0; i < n; ++i) {
      const double u = rng.uniform();
      int a = 0;
      while (a + 1 < peaks() && u > cum[a]) ++a;
      for (int j = 0; j < dim(); ++j)
        out(i, j) = means(a, j) + std::sqrt(variances(a, j)) * rng.normal();
    }
    return out;
  }

  /// Exact mean and covariance of the mixture.
  Eigen::VectorXd mean() const {
    return means.transpose() * weights;
  }
  Eigen::MatrixXd covariance() const {
    const Eigen::VectorXd mu = mean();
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(dim(), dim());
    for (int a = 0; a < peaks(); ++a) {
      const Eigen::VectorXd da = means.row(a).transpose() - mu;
      c += weights[a] * (da * da.transpose());
      c += weights[a] * variances.row(a).asDiagonal();
    }
    return c;
  }
};

}  // namespace actdiff
