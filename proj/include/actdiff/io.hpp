#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace actdiff {

/// Shortest round-trip float formatting capped at 9 significant digits
/// ("%.9g"); all CSV output goes through this so fixed-seed runs are
/// byte-identical.
std::string fmt_g9(double v);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const Eigen::MatrixXd& rows);

/// Reads a numeric CSV with one header line. Column names are returned in
/// `header` when non-null. Malformed rows raise with file:line context.
Eigen::MatrixXd read_csv(const std::string& path, std::vector<std::string>* header = nullptr);

}  // namespace actdiff
