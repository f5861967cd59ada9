#pragma once

#include <cstdint>
#include <string>

#include "actdiff/net.hpp"

namespace actdiff {

/// Versioned network checkpoint: named parameter tensors with shapes and a
/// dtype tag (little-endian float64, base64 payload), optimizer moments,
/// the iteration count, and the hash of the run configuration that produced
/// it. Loading verifies version, dtype, architecture and (optionally) the
/// config hash, so resuming under a different configuration is refused.
struct Checkpoint {
  std::uint32_t format_version = 1;
  std::uint64_t config_hash = 0;
  std::int64_t iteration = 0;
  NetConfig net_config;
  ScoreNet net;
  AdamOptimizer opt;
};

void save_checkpoint(const std::string& path, const ScoreNet& net, const AdamOptimizer& opt,
                     std::int64_t iteration, std::uint64_t config_hash);

Checkpoint load_checkpoint(const std::string& path);

}  // namespace actdiff
