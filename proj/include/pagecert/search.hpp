#pragma once

#include <atomic>
#include <cmath>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

#include <json.hpp>

#include "certify.hpp"
#include "table.hpp"

namespace pagecert {

// run fn(i) for i in [0, n) on a pool; results come back in index order
template <class R>
std::vector<R> parallel_map(size_t n, unsigned threads, const std::function<R(size_t)>& fn) {
  std::vector<std::optional<R>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<size_t>(threads, std::max<size_t>(n, 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::vector<R> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

// a modulus range as Table rows use it: odd rows may begin below 3e8
inline modulus_range row_range(double q_lo, double q_hi, parity p) {
  const bool early = p == parity::odd ? q_lo < odd_start : q_lo < even_start;
  return modulus_range(q_lo, q_hi, p, early);
}

// c grid step by block of the table
inline double default_c_step(double q_lo) { return q_lo < 2.1e18 ? 0.001 : 0.005; }

// log10 x values just below the side-condition boundary
inline std::vector<double> default_x_grid(double q_lo, double c) {
  std::vector<double> g;
  const double top = std::log10(q_lo) / c;
  for (int k = 0; k <= 50; ++k) g.push_back(std::floor((top - 0.02 * k) * 100) / 100);
  return g;
}

struct search_options {
  candidate_config base{};  // range, c and x are overwritten
  std::vector<double> x_grid;  // empty: default_x_grid at each c
  int max_steps = 10000;
};

struct search_result {
  double c = 0;
  double log10_x = 0;
  verification_certificate certificate;
  int steps = 0;
};

namespace detail {

inline double grid_c(double c_start, double c_step, int k) {
  return std::round((c_start + k * c_step) * 1e9) / 1e9;
}

inline bool side_ok(double q_lo, double c, double log10_x) {
  return log10_x * std::log(10.0) <= std::log(q_lo) / c;
}

}  // namespace detail

// largest c = c_start + k c_step for which some grid x certifies
inline std::optional<search_result> find_best(const modulus_range& range, double c_start, double c_step,
                                              const search_options& opt = {}) {
  if (!(c_start > 0) || !(c_step > 0)) throw domain_error("find_best needs c_start > 0 and c_step > 0");
  range.validate();
  std::optional<search_result> best;
  for (int k = 0; k < opt.max_steps; ++k) {
    const double c = detail::grid_c(c_start, c_step, k);
    std::vector<double> grid = opt.x_grid.empty() ? default_x_grid(range.q_lo, c) : opt.x_grid;
    std::optional<search_result> hit;
    for (double lx : grid) {
      if (!detail::side_ok(range.q_lo, c, lx)) continue;
      candidate_config cfg = opt.base;
      cfg.range = range;
      cfg.c = c;
      cfg.log10_x = lx;
      auto cert = certify(cfg);
      if (cert.status == cert_status::certified) {
        hit = search_result{c, lx, cert, k + 1};
        break;
      }
    }
    if (!hit) break;
    best = hit;
  }
  return best;
}

struct row_verification {
  size_t row_index = 0;
  parity par = parity::even;
  double published_c = 0;
  double c_used = 0;
  double log10_x = 0;
  bool reduced = false;
  double side_margin = 0;
  verification_certificate certificate;

  bool ok() const { return certificate.status == cert_status::certified; }
};

inline constexpr double max_c_reduction = 0.005;

inline row_verification verify_row(const table_row& row, parity p, const candidate_config& base = {},
                                   size_t index = 0, bool allow_reduction = true) {
  const auto& e = row.entry(p);
  if (!e) throw parse_error(std::string("row has no ") + to_string(p) + " entry");
  row_verification out;
  out.row_index = index;
  out.par = p;
  out.published_c = e->c;
  out.log10_x = e->log10_x;
  candidate_config cfg = base;
  cfg.range = row_range(row.q_lo, row.q_hi, p);
  cfg.c = e->c;
  cfg.log10_x = e->log10_x;
  out.side_margin = cfg.side_margin();
  out.c_used = cfg.c;
  out.certificate = certify(cfg);
  if (!out.ok() && allow_reduction) {
    cfg.c = e->c * (1 - max_c_reduction);
    auto second = certify(cfg);
    if (second.status == cert_status::certified) {
      out.c_used = cfg.c;
      out.reduced = true;
      out.certificate = second;
    }
  }
  return out;
}

inline std::vector<row_verification> verify_table(const std::vector<table_row>& rows,
                                                  const std::vector<parity>& parities, const candidate_config& base,
                                                  unsigned threads, bool allow_reduction = true) {
  check_tiling(rows);
  std::vector<std::pair<size_t, parity>> jobs;
  for (size_t i = 0; i < rows.size(); ++i)
    for (parity p : parities)
      if (rows[i].entry(p)) jobs.emplace_back(i, p);
  return parallel_map<row_verification>(jobs.size(), threads, [&](size_t j) {
    return verify_row(rows[jobs[j].first], jobs[j].second, base, jobs[j].first, allow_reduction);
  });
}

// free mode: grow q_hi by doubling while c still certifies
inline std::vector<table_row> derive_tiling(double q_start, double q_end, parity p, double c, double log10_x_offset,
                                            const candidate_config& base = {}) {
  std::vector<table_row> rows;
  double lo = q_start;
  while (lo < q_end) {
    const double lx = std::floor((std::log10(lo) / c - log10_x_offset) * 100) / 100;
    double hi = std::min(2 * lo, q_end), good = 0;
    for (;;) {
      candidate_config cfg = base;
      cfg.range = row_range(lo, hi, p);
      cfg.c = c;
      cfg.log10_x = lx;
      if (certify(cfg).status != cert_status::certified) break;
      good = hi;
      if (hi >= q_end) break;
      hi = std::min(2 * hi, q_end);
    }
    if (good == 0) break;
    table_row r{lo, good, std::nullopt, std::nullopt};
    (p == parity::even ? r.even : r.odd) = row_entry{c, lx};
    rows.push_back(r);
    lo = good;
  }
  return rows;
}

inline nlohmann::json to_json(const cell_report& c) {
  return {{"q", {c.q.lo(), c.q.hi()}}, {"tau", {c.tau.lo(), c.tau.hi()}}, {"f", {c.f.lo(), c.f.hi()}}, {"x", c.x}};
}

inline nlohmann::json to_json(const verification_certificate& c) {
  return {{"status", to_string(c.status)},
          {"q_lo", c.config.range.q_lo},
          {"q_hi", c.config.range.q_hi},
          {"parity", to_string(c.config.range.par)},
          {"c", c.config.c},
          {"log10_x", c.config.log10_x},
          {"cells_examined", c.cells_examined},
          {"leaves", c.leaves},
          {"vacuous", c.vacuous},
          {"escalations", c.escalations},
          {"tau_floor", c.tau_floor},
          {"dominance", c.dominance},
          {"config_x_clipped", c.config_x_clipped},
          {"worst", to_json(c.worst)},
          {"note", c.note}};
}

inline nlohmann::json to_json(const row_verification& r) {
  return {{"row", r.row_index + 1},       {"parity", to_string(r.par)},  {"published_c", r.published_c},
          {"c_used", r.c_used},           {"reduced", r.reduced},        {"log10_x", r.log10_x},
          {"side_margin", r.side_margin}, {"certificate", to_json(r.certificate)}};
}

}  // namespace pagecert
