#pragma once

#include <Eigen/Core>
#include <vector>

#include "actdiff/ising.hpp"
#include "actdiff/mixture.hpp"

namespace actdiff {

/// Coarse-grained "magnetization" curve: for each filter size l the lattice
/// is convolved with the uniform l x l filter (periodic wrap), absolute
/// values are averaged over positions, and the result is averaged over the
/// ensemble. l = 1 is trivially 1 for +-1 spins; valid l run up to L/2.
struct ConvolutionCurve {
  std::vector<int> filter_sizes;
  std::vector<double> values;  // in [0, 1], one per filter size
  int ensemble_size = 0;
};

ConvolutionCurve convolution_metric(const std::vector<Eigen::MatrixXi>& lattices,
                                    const std::vector<int>& filter_sizes);
ConvolutionCurve convolution_metric(const std::vector<IsingLattice>& lattices,
                                    const std::vector<int>& filter_sizes);

/// Largest absolute gap between two curves sharing a filter-size grid.
double convolution_gap(const ConvolutionCurve& a, const ConvolutionCurve& b);

/// Nearest-mean assignment of samples to mixture peaks. Samples farther than
/// 6 sigma (per-peak max std) from every mean count as unassigned; per-peak
/// stds pool all dimensions around the empirical peak mean.
struct MixtureRecoveryReport {
  Eigen::VectorXi counts;
  Eigen::VectorXd frequencies;
  Eigen::VectorXd stds;  // NaN for empty peaks
  double unassigned_fraction = 0.0;
  long n_samples = 0;
};

MixtureRecoveryReport mixture_recovery(const Eigen::MatrixXd& samples,
                                       const GaussianMixture& mix);

/// Energy-distance V-statistic 2 E|A-B| - E|A-A'| - E|B-B'| between two
/// sample sets (rows are points). Sets larger than `cap` are strided down so
/// the pairwise cost stays bounded; the strided pick keeps the statistic
/// symmetric and deterministic.
double energy_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, int cap = 2000);

/// Closed-form speciation times from the target covariance:
///   passive: 1/2 log(max_eig(C0) / T_p)
///   active:  1/2 log(max_eig(C0) (1 + tau) / T_a)
struct SpeciationTimes {
  double t_passive = 0.0;
  double t_active = 0.0;
};

SpeciationTimes speciation_times(const Eigen::MatrixXd& c0, double T_p, double T_a, double tau);

/// Real (decaying) terms of the Fourier-mode evolution rate at stiffness 1,
/// exact and small-t linearized, plus the common oscillatory coefficient
/// k x0 e^{-t}. The active small-t term is positive below t = tau/2, the
/// exact passive term is negative for all t >= 0, and the exact active term
/// reduces to the passive one as tau -> 0.
struct FourierRates {
  double passive = 0.0;          // -T k^2 e^{-2t}
  double active = 0.0;           // exact active real term
  double passive_small_t = 0.0;  // -T k^2 (1 - 2t)
  double active_small_t = 0.0;   // -(T_a k^2 / tau^2)(2t/tau - 1)
  double oscillatory = 0.0;      // k x0 e^{-t}
};

FourierRates fourier_decay_rates(double k_mode, double x0, double t, double T, double T_a,
                                 double tau);

}  // namespace actdiff
