#pragma once

#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "charbounds.hpp"
#include "rigor.hpp"

namespace pagecert {

struct tiling_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct row_entry {
  double c = 0;
  double log10_x = 0;
  bool operator==(const row_entry&) const = default;
};

struct table_row {
  double q_lo = 0, q_hi = 0;
  std::optional<row_entry> even, odd;

  const std::optional<row_entry>& entry(parity p) const { return p == parity::even ? even : odd; }
  bool operator==(const table_row&) const = default;
};

inline std::string format_number(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

inline double parse_number(const std::string& field) {
  std::string s = field;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  if (!detail::is_decimal_literal(s)) throw parse_error("bad number '" + field + "'");
  return std::strtod(s.c_str(), nullptr);
}

inline void check_tiling(const std::vector<table_row>& rows) {
  for (size_t i = 0; i < rows.size(); ++i) {
    if (!(rows[i].q_lo < rows[i].q_hi)) throw tiling_error("row " + std::to_string(i + 1) + " has q0 >= q1");
    if (i + 1 < rows.size() && rows[i].q_hi != rows[i + 1].q_lo)
      throw tiling_error("gap between rows " + std::to_string(i + 1) + " and " + std::to_string(i + 2));
  }
}

inline constexpr const char* csv_header = "q0,q1,c_even,x_even,c_odd,x_odd";

// x columns hold log10 x
inline std::string emit_csv(const std::vector<table_row>& rows) {
  check_tiling(rows);
  std::ostringstream os;
  os << csv_header << "\n";
  auto put = [&](const std::optional<row_entry>& e) {
    if (e)
      os << format_number(e->c) << "," << format_number(e->log10_x);
    else
      os << "--,--";
  };
  for (const auto& r : rows) {
    os << format_number(r.q_lo) << "," << format_number(r.q_hi) << ",";
    put(r.even);
    os << ",";
    put(r.odd);
    os << "\n";
  }
  return os.str();
}

inline std::vector<table_row> parse_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::vector<table_row> rows;
  bool header = false;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != csv_header) throw parse_error("expected header '" + std::string(csv_header) + "'");
      header = true;
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (f.size() != 6) throw parse_error("line " + std::to_string(lineno) + ": expected 6 fields");
    table_row r;
    r.q_lo = parse_number(f[0]);
    r.q_hi = parse_number(f[1]);
    auto entry = [&](const std::string& c, const std::string& x) -> std::optional<row_entry> {
      const bool dc = c == "--", dx = x == "--";
      if (dc != dx) throw parse_error("line " + std::to_string(lineno) + ": half-empty entry");
      if (dc) return std::nullopt;
      return row_entry{parse_number(c), parse_number(x)};
    };
    r.even = entry(f[2], f[3]);
    r.odd = entry(f[4], f[5]);
    rows.push_back(r);
  }
  if (!header) throw parse_error("missing header");
  return rows;
}

inline nlohmann::json to_json(const table_row& r) {
  auto e = [](const std::optional<row_entry>& v) -> nlohmann::json {
    if (!v) return nullptr;
    return {{"c", v->c}, {"log10_x", v->log10_x}};
  };
  return {{"q0", r.q_lo}, {"q1", r.q_hi}, {"even", e(r.even)}, {"odd", e(r.odd)}};
}

inline table_row row_from_json(const nlohmann::json& j) {
  table_row r;
  r.q_lo = j.at("q0").get<double>();
  r.q_hi = j.at("q1").get<double>();
  auto e = [](const nlohmann::json& v) -> std::optional<row_entry> {
    if (v.is_null()) return std::nullopt;
    return row_entry{v.at("c").get<double>(), v.at("log10_x").get<double>()};
  };
  r.even = e(j.at("even"));
  r.odd = e(j.at("odd"));
  return r;
}

inline std::string emit_json(const std::vector<table_row>& rows) {
  check_tiling(rows);
  nlohmann::json a = nlohmann::json::array();
  for (const auto& r : rows) a.push_back(to_json(r));
  return a.dump(2) + "\n";
}

inline std::vector<table_row> parse_json(const std::string& text) {
  std::vector<table_row> rows;
  for (const auto& j : nlohmann::json::parse(text)) rows.push_back(row_from_json(j));
  return rows;
}

enum class table_format { csv, json };

inline std::string emit_table(const std::vector<table_row>& rows, table_format f) {
  return f == table_format::csv ? emit_csv(rows) : emit_json(rows);
}

// the published values
inline std::vector<table_row> published_table() {
  struct raw {
    double q0, q1, ce, xe, co, xo;
  };
  static const raw data[] = {
      {4e5, 7e5, 1.011, 5.54, 0, 0},         {7e5, 1e6, 1.017, 5.73, 0, 0},
      {1e6, 1.7e6, 1.020, 5.88, 0, 0},       {1.7e6, 3.1e6, 1.025, 6.08, 0, 0},
      {3.1e6, 6.1e6, 1.030, 6.30, 0, 0},     {6.1e6, 1.3e7, 1.036, 6.54, 0, 0},
      {1.3e7, 2.4e7, 1.041, 6.83, 0, 0},     {2.4e7, 5.4e7, 1.044, 7.06, 0, 0},
      {5.4e7, 1.5e8, 1.051, 7.35, 0, 0},     {1.5e8, 6.2e8, 1.055, 7.75, 1.021, 8.00},
      {6.2e8, 4.4e9, 1.060, 8.29, 1.029, 8.54}, {4.4e9, 6.4e10, 1.070, 9.01, 1.041, 9.26},
      {6.4e10, 2.7e12, 1.080, 10.00, 1.055, 10.24}, {2.7e12, 6.2e14, 1.090, 11.40, 1.069, 11.63},
      {6.2e14, 2.1e18, 1.101, 13.43, 1.082, 13.66}, {2.1e18, 4.4e21, 1.200, 15.26, 1.182, 15.50},
      {4.4e21, 1.5e24, 1.300, 16.64, 1.283, 16.86}, {1.5e24, 3.1e26, 1.350, 17.90, 1.334, 18.12},
      {3.1e26, 2.4e28, 1.400, 18.92, 1.383, 19.15}, {2.4e28, 1.5e30, 1.425, 19.91, 1.411, 20.11},
      {1.5e30, 1e32, 1.445, 20.89, 1.429, 21.11},   {1e32, 9.1e32, 1.495, 21.40, 1.480, 21.61},
  };
  std::vector<table_row> rows;
  for (const auto& d : data) {
    table_row r{d.q0, d.q1, row_entry{d.ce, d.xe}, std::nullopt};
    if (d.co > 0) r.odd = row_entry{d.co, d.xo};
    rows.push_back(r);
  }
  return rows;
}

}  // namespace pagecert
