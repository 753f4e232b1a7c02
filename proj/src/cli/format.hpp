#pragma once

#include <ostream>
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

#include "wbalg/ideal_units.hpp"
#include "wbalg/partitions.hpp"

namespace wbalg::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

enum class Format { json, csv, mm };

Format parse_format(const std::string& s);

// Values rounded to 12 significant digits so the JSON bytes are stable.
double json_number(double x);
std::string csv_number(double x);

Json partition_json(const Partition& mu);
Json label_json(const UnitLabel& l);
Json matrix_json(const Eigen::MatrixXd& m);

// "2,1", "(2,1)" or "2 1"; "()" and "" give the empty partition.
Partition parse_partition(const std::string& s);

// Matrix Market: dense array for small matrices, coordinate for operators.
void write_mm_array(std::ostream& os, const Eigen::MatrixXd& m, const std::string& comment);
void write_mm_coordinate(std::ostream& os, const Eigen::MatrixXd& m, const std::string& comment, double cutoff = 1e-14);

Json header(const std::string& command, int p, int d);

}  // namespace wbalg::cli
