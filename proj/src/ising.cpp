#include "actdiff/ising.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <thread>

#include "actdiff/errors.hpp"

namespace actdiff {

IsingLattice ising_mcmc(int L, double temperature, std::int64_t steps, std::uint64_t seed) {
  if (L < 2) throw InvalidInputError("ising_mcmc: L must be >= 2");
  if (!(temperature > 0.0)) throw InvalidInputError("ising_mcmc: temperature must be > 0");
  if (steps < 0) throw InvalidInputError("ising_mcmc: steps must be >= 0");

  IsingLattice lat;
  lat.L = L;
  lat.temperature = temperature;
  lat.seed = seed;
  lat.spins.resize(L, L);

  CounterRng rng(seed, substream(rng_domain::kIsingChain, 0));
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j) lat.spins(i, j) = rng.uniform() < 0.5 ? -1 : 1;

  // acceptance table: dE in {-8, -4, 0, +4, +8} for J = 1
  const double beta = 1.0 / temperature;
  double acc[2] = {std::exp(-4.0 * beta), std::exp(-8.0 * beta)};

  auto& s = lat.spins;
  for (std::int64_t n = 0; n < steps; ++n) {
    const int i = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(L)));
    const int j = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(L)));
    const int nb = s((i + 1) % L, j) + s((i + L - 1) % L, j) + s(i, (j + 1) % L) +
                   s(i, (j + L - 1) % L);
    const int dE = 2 * s(i, j) * nb;  // in {-8,-4,0,4,8}
    if (dE <= 0 || rng.uniform() < acc[dE / 4 - 1]) s(i, j) = -s(i, j);
  }
  return lat;
}

std::vector<IsingLattice> ising_ensemble(int L, double temperature, std::int64_t steps,
                                         int count, std::uint64_t seed, int threads) {
  if (count < 0) throw InvalidInputError("ising_ensemble: count must be >= 0");
  std::vector<IsingLattice> out(count);
  auto run = [&](int c) { out[c] = ising_mcmc(L, temperature, steps, seed + static_cast<std::uint64_t>(c)); };
  threads = std::max(1, threads);
  if (threads == 1 || count < 2) {
    for (int c = 0; c < count; ++c) run(c);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&] {
        for (int c = next.fetch_add(1); c < count; c = next.fetch_add(1)) run(c);
      });
    for (auto& th : pool) th.join();
  }
  return out;
}

void write_lattice(const std::string& path, const IsingLattice& lat) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("write_lattice: cannot open " + path);
  for (int i = 0; i < lat.L; ++i) {
    for (int j = 0; j < lat.L; ++j) {
      if (j) out << ' ';
      out << lat.spins(i, j);
    }
    out << '\n';
  }
}

IsingLattice read_lattice(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("read_lattice: cannot open " + path);
  std::vector<std::vector<int>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<int> row;
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
      if (pos >= line.size()) break;
      std::size_t end = pos;
      while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') ++end;
      const std::string tok = line.substr(pos, end - pos);
      if (tok != "1" && tok != "-1" && tok != "+1")
        throw InvalidInputError("read_lattice: " + path + ": entry '" + tok + "' is not +-1");
      row.push_back(tok == "-1" ? -1 : 1);
      pos = end;
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InvalidInputError("read_lattice: " + path + " is empty");
  const int L = static_cast<int>(rows.size());
  IsingLattice lat;
  lat.L = L;
  lat.spins.resize(L, L);
  for (int i = 0; i < L; ++i) {
    if (static_cast<int>(rows[i].size()) != L)
      throw InvalidInputError("read_lattice: " + path + " is not square");
    for (int j = 0; j < L; ++j) lat.spins(i, j) = rows[i][j];
  }
  return lat;
}

}  // namespace actdiff
