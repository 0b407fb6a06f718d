#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "charbounds.hpp"
#include "table.hpp"

namespace pagecert {

struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double asymptotic_q0 = 4.6e20;
inline constexpr double table_end_q0 = 9.1e32;
inline constexpr double threshold_search_limit = 1e40;

// 6 e c / log q < (log 4) / 4 over the whole enclosure
inline bool calypso_holds(double c, const ival& q) {
  if (!(q.lo() > 1)) throw domain_error("calypso needs q > 1");
  const ival lhs = ival(6) * euler_e<double>() * ival(c) / log(ival(q.lo()));
  const ival rhs = log(ival(4)) / ival(4);
  return lhs.hi() < rhs.lo();
}

// (1/c - 1/2) log q - log A - 9 log log q + 8 log c
inline ival cheeseburger_value(double c, const ival& q, parity p, double q0_for_A = asymptotic_q0) {
  if (!calypso_holds(c, q)) throw domain_error("cheeseburger needs the calypso inequality on q");
  const ival C(c), lq = log(q);
  const ival A = pv_constant<double>(p, q0_for_A);
  return (ival(1) / C - ival(0.5)) * lq - log(A) - ival(9) * log(lq) + ival(8) * log(C);
}

struct threshold_report {
  double c = 0;
  parity par = parity::even;
  double q0_for_A = asymptotic_q0;
  ival calypso_threshold{0};
  ival cheeseburger_threshold{0};
  ival combined_threshold{0};
};

namespace detail {

// bisect on log q: bad(a) and good(b) hold at the ends, the result brackets the switch
template <class Good>
ival bisect_log_q(double a, double b, Good good) {
  for (int k = 0; k < 200 && b - a > 1e-13 * b; ++k) {
    const double m = 0.5 * (a + b);
    (good(m) ? b : a) = m;
  }
  return {down(std::exp(a)), up(std::exp(b))};
}

}  // namespace detail

inline threshold_report solve_threshold(double c, parity p, double q0_for_A = asymptotic_q0) {
  if (!(c > 0 && c < 2)) throw domain_error("solve_threshold needs 0 < c < 2");
  threshold_report r;
  r.c = c;
  r.par = p;
  r.q0_for_A = q0_for_A;
  const double lmax = std::log(threshold_search_limit);
  auto cal = [&](double l) { return calypso_holds(c, ival(std::exp(l))); };
  double a = std::log(3.0);
  if (cal(a)) {
    r.calypso_threshold = ival(3);
  } else {
    if (!cal(lmax)) throw solver_error("calypso inequality fails below 1e40");
    r.calypso_threshold = detail::bisect_log_q(a, lmax, cal);
  }
  // the cheeseburger bound is used only where calypso holds
  const double start = std::log(r.calypso_threshold.hi());
  auto pos = [&](double l) { return strictly_positive(cheeseburger_value(c, ival(std::exp(l)), p, q0_for_A)); };
  if (pos(start)) {
    r.cheeseburger_threshold = r.calypso_threshold;
  } else {
    if (!pos(lmax)) throw solver_error("cheeseburger bound has no sign change below 1e40");
    r.cheeseburger_threshold = detail::bisect_log_q(start, lmax, pos);
  }
  r.combined_threshold = max(r.calypso_threshold, r.cheeseburger_threshold);
  return r;
}

struct coverage_result {
  bool covered = false;
  std::string reason;
};

// Rows must tile from the parity's starting modulus up to some q_end with every
// entry at least the report's c, and q_end must reach the combined threshold.
inline coverage_result theorem_coverage(const std::vector<table_row>& table, const threshold_report& even,
                                        const threshold_report& odd) {
  try {
    check_tiling(table);
  } catch (const tiling_error& e) {
    return {false, e.what()};
  }
  for (const threshold_report* rep : {&even, &odd}) {
    const parity p = rep->par;
    const double start = p == parity::even ? even_start : odd_start;
    std::optional<double> lo, end;
    for (const auto& row : table) {
      const auto& e = row.entry(p);
      if (!e) {
        if (lo) return {false, std::string(to_string(p)) + " entries stop before the end of the table"};
        continue;
      }
      if (!lo) lo = row.q_lo;
      if (e->c < rep->c)
        return {false, std::string(to_string(p)) + " row starting at " + format_number(row.q_lo) + " has c " +
                           format_number(e->c) + " below " + format_number(rep->c)};
      end = row.q_hi;
    }
    if (!lo) return {false, std::string("no ") + to_string(p) + " rows"};
    if (*lo > start) return {false, std::string(to_string(p)) + " rows start above " + format_number(start)};
    if (*end < rep->combined_threshold.hi())
      return {false, std::string(to_string(p)) + " rows end at " + format_number(*end) + ", below the threshold " +
                         format_number(rep->combined_threshold.hi())};
  }
  return {true, ""};
}

inline nlohmann::json to_json(const threshold_report& r) {
  auto iv = [](const ival& v) { return nlohmann::json::array({v.lo(), v.hi()}); };
  return {{"c", r.c},
          {"parity", to_string(r.par)},
          {"q0_for_A", r.q0_for_A},
          {"calypso_threshold", iv(r.calypso_threshold)},
          {"cheeseburger_threshold", iv(r.cheeseburger_threshold)},
          {"combined_threshold", iv(r.combined_threshold)}};
}

}  // namespace pagecert
