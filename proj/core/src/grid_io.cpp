#include "pudq/grid_io.hpp"

#include <cstdio>

#include "pudq/errors.hpp"

namespace pudq {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string table_to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (i) out += ',';
    out += t.header[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

nlohmann::json table_to_json(const Table& t, nlohmann::json meta) {
  nlohmann::json j;
  j["meta"] = std::move(meta);
  j["columns"] = t.header;
  j["rows"] = t.rows;
  return j;
}

std::vector<double> axis_points(const AxisSpec& a) {
  if (a.steps < 1) throw ConfigError("axis '" + a.var + "': steps must be >= 1");
  std::vector<double> pts;
  pts.reserve(a.steps);
  if (a.steps == 1) {
    pts.push_back(a.lo);
    return pts;
  }
  double h = (a.hi - a.lo) / (a.steps - 1);
  for (int i = 0; i < a.steps; ++i) pts.push_back(a.lo + h * i);
  return pts;
}

}  // namespace pudq
