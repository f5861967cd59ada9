#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "actdiff/rng.hpp"

namespace actdiff {

struct IsingLattice {
  int L = 0;
  double temperature = 0.0;
  std::uint64_t seed = 0;
  Eigen::MatrixXi spins;  // entries in {-1, +1}

  double magnetization() const {
    return spins.sum() / static_cast<double>(spins.size());
  }

  /// Row-major flattened spins as doubles (network/sampler representation).
  Eigen::VectorXd flattened() const {
    Eigen::VectorXd v(spins.size());
    for (int i = 0; i < L; ++i)
      for (int j = 0; j < L; ++j) v[i * L + j] = spins(i, j);
    return v;
  }
};

/// Metropolis single-spin-flip chain for the zero-field J = 1 Ising model on
/// a periodic L x L lattice, started from uniform random spins. One step is
/// one attempted flip. Returns the final configuration.
IsingLattice ising_mcmc(int L, double temperature, std::int64_t steps, std::uint64_t seed);

/// Independent chains (seed + chain index streams), optionally threaded;
/// results are ordered by chain index regardless of thread count.
std::vector<IsingLattice> ising_ensemble(int L, double temperature, std::int64_t steps,
                                         int count, std::uint64_t seed, int threads = 1);

/// Text format: L lines of L whitespace-separated +-1 entries.
void write_lattice(const std::string& path, const IsingLattice& lat);
IsingLattice read_lattice(const std::string& path);

}  // namespace actdiff
