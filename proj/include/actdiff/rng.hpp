#pragma once

#include <cmath>
#include <cstdint>

namespace actdiff {

/// Counter-based RNG (Philox4x32-10). A generator is addressed by
/// (seed, stream); draws depend only on that address and the draw index,
/// so per-chain / per-iteration streams reproduce identically for any
/// thread count or batching layout.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key0_(static_cast<std::uint32_t>(seed)),
        key1_(static_cast<std::uint32_t>(seed >> 32)),
        stream_(stream) {}

  std::uint32_t next_u32() {
    if (buf_pos_ == 4) {
      fill_block();
      buf_pos_ = 0;
    }
    return buf_[buf_pos_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
  }

  /// Uniform double in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in (0, 1].
  double uniform_pos() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller; second deviate of each pair is cached.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = uniform_pos();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(th);
    have_cached_ = true;
    return r * std::cos(th);
  }

  /// Uniform integer in [0, n). Unbiased (rejection sampling).
  std::uint64_t uniform_int(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
    std::uint64_t u;
    do {
      u = next_u64();
    } while (u > limit);
    return u % n;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kBump0 = 0x9E3779B9u;
  static constexpr std::uint32_t kBump1 = 0xBB67AE85u;

  static void round_once(std::uint32_t ctr[4], std::uint32_t k0, std::uint32_t k1) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
    const std::uint32_t out0 = static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ k0;
    const std::uint32_t out2 = static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ k1;
    ctr[1] = static_cast<std::uint32_t>(p1);
    ctr[3] = static_cast<std::uint32_t>(p0);
    ctr[0] = out0;
    ctr[2] = out2;
  }

  void fill_block() {
    std::uint32_t c[4] = {static_cast<std::uint32_t>(counter_),
                          static_cast<std::uint32_t>(counter_ >> 32),
                          static_cast<std::uint32_t>(stream_),
                          static_cast<std::uint32_t>(stream_ >> 32)};
    std::uint32_t k0 = key0_, k1 = key1_;
    for (int r = 0; r < 10; ++r) {
      round_once(c, k0, k1);
      k0 += kBump0;
      k1 += kBump1;
    }
    for (int i = 0; i < 4; ++i) buf_[i] = c[i];
    ++counter_;
  }

  std::uint32_t key0_, key1_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::uint32_t buf_[4] = {0, 0, 0, 0};
  int buf_pos_ = 4;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

/// Fold a domain tag and an index into a stream id, so that independent
/// subsystems (chains, iterations, dataset draws) never share a stream.
inline std::uint64_t substream(std::uint64_t domain, std::uint64_t index) {
  return domain * 0x9E3779B97F4A7C15ull + index;
}

namespace rng_domain {
inline constexpr std::uint64_t kForwardPath = 1;
inline constexpr std::uint64_t kPrior = 2;
inline constexpr std::uint64_t kSamplerChain = 3;
inline constexpr std::uint64_t kTrainIteration = 4;
inline constexpr std::uint64_t kDataset = 5;
inline constexpr std::uint64_t kInit = 6;
inline constexpr std::uint64_t kIsingChain = 7;
}  // namespace rng_domain

}  // namespace actdiff
