#pragma once

#include <string>

namespace actdiff {

/// Severity gate is read once from the AD_LOG environment variable:
/// "debug" or "info" enable the corresponding levels; anything else (or
/// unset) keeps only warnings. Output goes to stderr.
void log_debug(const std::string& msg);
void log_info(const std::string& msg);
void log_warn(const std::string& msg);

}  // namespace actdiff
