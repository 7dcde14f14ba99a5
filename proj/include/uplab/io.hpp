#pragma once

// CSV and JSON serialization of sweep rows and grid functions. Floats are
// written with 17 significant digits so every file re-reads exactly.

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "uplab/errors.hpp"
#include "uplab/grid.hpp"
#include "uplab/harness.hpp"

namespace uplab::io {

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline double parse_double(const std::string& s) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') throw domain_error("csv: malformed number '" + s + "'");
  return v;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

inline constexpr const char* sweep_header =
    "d,p,method_log_bound,gaussian_log_product,claimed_floor_log,quotient_log,floor_ok,below_sharp,"
    "quotient_ok";

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << sweep_header << '\n';
  for (const auto& r : rows) {
    os << r.d << ',' << format_double(r.p) << ',' << format_double(r.method_log_bound) << ','
       << format_double(r.gaussian_log_product) << ',' << format_double(r.claimed_floor_log) << ','
       << format_double(r.quotient_log) << ',' << int(r.floor_ok) << ',' << int(r.below_sharp) << ','
       << int(r.quotient_ok) << '\n';
  }
}

inline std::vector<SweepRow> read_sweep_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != sweep_header) throw domain_error("csv: missing sweep header");
  std::vector<SweepRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 9) throw domain_error("csv: expected 9 fields, got " + std::to_string(f.size()));
    SweepRow r;
    r.d = std::stoi(f[0]);
    r.p = parse_double(f[1]);
    r.method_log_bound = parse_double(f[2]);
    r.gaussian_log_product = parse_double(f[3]);
    r.claimed_floor_log = parse_double(f[4]);
    r.quotient_log = parse_double(f[5]);
    r.floor_ok = f[6] == "1";
    r.below_sharp = f[7] == "1";
    r.quotient_ok = f[8] == "1";
    rows.push_back(r);
  }
  return rows;
}

/// {"d0": ..., "slope": ..., "pass": ...}; a NaN slope is written as null.
inline nlohmann::json sweep_summary(const SweepResult& s) {
  nlohmann::json j;
  j["d0"] = s.d0;
  j["slope"] = std::isnan(s.method_slope) ? nlohmann::json(nullptr) : nlohmann::json(s.method_slope);
  j["pass"] = s.pass;
  return j;
}

// Grid layout: "# d=<d>,n=<n>,half_width=<L>", then "index,re,im" rows in
// row-major order.
inline void write_grid_csv(std::ostream& os, const GridFunction& f) {
  const auto& s = f.spec();
  os << "# d=" << s.d << ",n=" << s.n << ",half_width=" << format_double(s.half_width) << '\n';
  os << "index,re,im\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    os << i << ',' << format_double(f[i].real()) << ',' << format_double(f[i].imag()) << '\n';
  }
}

inline GridFunction read_grid_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("# d=", 0) != 0) throw domain_error("grid csv: missing spec line");
  int d = 0;
  int n = 0;
  char width[64] = {};
  if (std::sscanf(line.c_str(), "# d=%d,n=%d,half_width=%63s", &d, &n, width) != 3) {
    throw domain_error("grid csv: malformed spec line");
  }
  const auto spec = make_grid_spec(d, n, parse_double(width));
  if (!std::getline(is, line) || line != "index,re,im") throw domain_error("grid csv: missing header");
  std::vector<complex> values;
  values.reserve(spec.size());
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 3) throw domain_error("grid csv: expected 3 fields");
    if (std::stoul(f[0]) != values.size()) throw domain_error("grid csv: indices out of order");
    values.emplace_back(parse_double(f[1]), parse_double(f[2]));
  }
  return GridFunction(spec, std::move(values));
}

}  // namespace uplab::io
