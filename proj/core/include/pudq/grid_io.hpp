#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace pudq {

// Shared grid/table output format. CSV: one header row naming the columns,
// one row per grid point. JSON: the same rows plus a metadata object. Floats
// are rendered with %.17g so identical configs give bit-identical files.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string format_double(double x);

std::string table_to_csv(const Table& t);
nlohmann::json table_to_json(const Table& t, nlohmann::json meta);

// Uniform axis: `steps` points from lo to hi inclusive (single point when
// steps == 1, placed at lo).
struct AxisSpec {
  std::string var;
  double lo = 0.0;
  double hi = 0.0;
  int steps = 1;
};

std::vector<double> axis_points(const AxisSpec& a);

}  // namespace pudq
