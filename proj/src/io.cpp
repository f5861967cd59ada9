#include "actdiff/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "actdiff/errors.hpp"

namespace actdiff {

std::string fmt_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const Eigen::MatrixXd& rows) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("write_csv: cannot open " + path);
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (j) out << ',';
    out << header[j];
  }
  out << '\n';
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    for (Eigen::Index j = 0; j < rows.cols(); ++j) {
      if (j) out << ',';
      out << fmt_g9(rows(i, j));
    }
    out << '\n';
  }
}

Eigen::MatrixXd read_csv(const std::string& path, std::vector<std::string>* header) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("read_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw InvalidInputError("read_csv: " + path + " is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> names;
  {
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) names.push_back(tok);
  }
  if (header) *header = names;
  const std::size_t ncol = names.size();

  std::vector<double> values;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t pos = 0, col = 0;
    while (col < ncol) {
      const std::size_t comma = line.find(',', pos);
      const std::string field =
          line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      double v = 0.0;
      const auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc{} || p != field.data() + field.size())
        throw InvalidInputError(path + ":" + std::to_string(line_no) +
                                ": malformed numeric field '" + field + "'");
      values.push_back(v);
      ++col;
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (col != ncol)
      throw InvalidInputError(path + ":" + std::to_string(line_no) + ": expected " +
                              std::to_string(ncol) + " columns");
  }
  const auto nrow = static_cast<Eigen::Index>(values.size() / ncol);
  Eigen::MatrixXd m(nrow, static_cast<Eigen::Index>(ncol));
  for (Eigen::Index i = 0; i < nrow; ++i)
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(ncol); ++j)
      m(i, j) = values[static_cast<std::size_t>(i) * ncol + static_cast<std::size_t>(j)];
  return m;
}

}  // namespace actdiff
