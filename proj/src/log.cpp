#include "actdiff/log.hpp"

#include <cstdlib>
#include <iostream>

namespace actdiff {
namespace {

enum class Level { warn = 0, info = 1, debug = 2 };

Level threshold() {
  static const Level lvl = [] {
    const char* env = std::getenv("AD_LOG");
    if (!env) return Level::warn;
    const std::string v(env);
    if (v == "debug") return Level::debug;
    if (v == "info") return Level::info;
    return Level::warn;
  }();
  return lvl;
}

}  // namespace

void log_debug(const std::string& msg) {
  if (threshold() >= Level::debug) std::cerr << "[debug] " << msg << "\n";
}

void log_info(const std::string& msg) {
  if (threshold() >= Level::info) std::cerr << "[info] " << msg << "\n";
}

void log_warn(const std::string& msg) { std::cerr << "[warn] " << msg << "\n"; }

}  // namespace actdiff
