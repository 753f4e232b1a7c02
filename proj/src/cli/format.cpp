#include "cli/format.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

namespace wbalg::cli {

Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "mm") return Format::mm;
  throw std::invalid_argument("unknown format '" + s + "' (json, csv, mm)");
}

double json_number(double x) {
  if (!std::isfinite(x)) return x;
  if (x == 0.0) return 0.0;  // folds -0
  return std::stod(fmt::format("{:.12g}", x));
}

std::string csv_number(double x) {
  if (x == 0.0) x = 0.0;
  return fmt::format("{:.6g}", x);
}

Json partition_json(const Partition& mu) { return Json(mu.parts()); }

Json label_json(const UnitLabel& l) {
  Json j;
  j["ideal"] = ideal_name(l.ideal);
  j["mu"] = partition_json(l.mu);
  if (l.ideal == Ideal::sub) j["nu"] = partition_json(l.nu);
  j["i"] = l.i + 1;
  j["j"] = l.j + 1;
  if (l.ideal == Ideal::sub) j["beta"] = l.beta + 1;
  return j;
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(json_number(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Partition parse_partition(const std::string& s) {
  std::vector<int> parts;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    std::size_t used = 0;
    const int v = std::stoi(cur, &used);
    if (used != cur.size()) throw std::invalid_argument("bad partition '" + s + "'");
    parts.push_back(v);
    cur.clear();
  };
  for (char ch : s) {
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      cur += ch;
    } else if (ch == ',' || ch == ' ' || ch == '(' || ch == ')') {
      flush();
    } else {
      throw std::invalid_argument("bad partition '" + s + "'");
    }
  }
  flush();
  return Partition(parts);
}

void write_mm_array(std::ostream& os, const Eigen::MatrixXd& m, const std::string& comment) {
  os << "%%MatrixMarket matrix array real general\n";
  if (!comment.empty()) os << "% " << comment << "\n";
  os << m.rows() << " " << m.cols() << "\n";
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r) os << fmt::format("{:.12g}", json_number(m(r, c))) << "\n";
}

void write_mm_coordinate(std::ostream& os, const Eigen::MatrixXd& m, const std::string& comment, double cutoff) {
  std::ostringstream body;
  long nnz = 0;
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (std::abs(m(r, c)) > cutoff) {
        body << r + 1 << " " << c + 1 << " " << fmt::format("{:.12g}", m(r, c)) << "\n";
        ++nnz;
      }
  os << "%%MatrixMarket matrix coordinate real general\n";
  if (!comment.empty()) os << "% " << comment << "\n";
  os << m.rows() << " " << m.cols() << " " << nnz << "\n" << body.str();
}

Json header(const std::string& command, int p, int d) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["p"] = p;
  j["d"] = d;
  return j;
}

}  // namespace wbalg::cli
