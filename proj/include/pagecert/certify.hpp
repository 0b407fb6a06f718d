#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "criterion.hpp"

namespace pagecert {

struct candidate_config {
  modulus_range range;
  double c = 1.0;
  double log10_x = 5.0;
  double x_floor = 16;
  int max_depth = 40;
  double tau_floor_exponent = -4;

  f_options f{};
  bool adaptive_x = true;     // also try per-cell x values besides the configured one
  long cell_budget = 400000;
  unsigned shuffle_seed = 0;  // nonzero: process the cell queue in random order
  bool long_double_escalation = true;

  double x() const { return std::pow(10.0, log10_x); }
  // log x <= log q_lo / c
  double side_margin() const { return std::log(range.q_lo) / c - log10_x * std::log(10.0); }
};

enum class cert_status { certified, failed, inconclusive };

inline const char* to_string(cert_status s) {
  switch (s) {
    case cert_status::certified: return "certified";
    case cert_status::failed: return "failed";
    case cert_status::inconclusive: return "inconclusive";
  }
  return "?";
}

struct cell_report {
  ival q{0}, tau{0};
  ival f{0};
  double x = 0;
};

struct verification_certificate {
  candidate_config config;
  cert_status status = cert_status::inconclusive;
  cell_report worst;  // certified: leaf with the largest upper bound; otherwise the offending cell
  long cells_examined = 0;
  long leaves = 0;
  long vacuous = 0;
  long escalations = 0;
  double tau_floor = 0;
  bool dominance = false;
  bool config_x_clipped = false;  // the configured x broke 1/tau >= log x on some cell
  std::string note;
};

namespace detail {

inline double tau_max_for(double c, double q) {  // upper bound for c / log q
  ival r = ival(up(c)) / log(ival(q));
  return r.hi();
}

template <class T>
class cell_evaluator {
 public:
  explicit cell_evaluator(const candidate_config& cfg) : cfg_(cfg) {}

  struct best {
    interval<T> f{0};
    T x = 0;
    bool ok = false;
  };

  const interval<T>& zeta_term(const interval<T>& tau) {
    auto key = std::make_pair(static_cast<long double>(tau.lo()), static_cast<long double>(tau.hi()));
    auto it = zcache_.find(key);
    if (it != zcache_.end()) return it->second;
    auto v = interval<T>(2) * zeta_deriv(1, interval<T>(2) - interval<T>(2) * tau, cfg_.f.zeta);
    return zcache_.emplace(key, v).first->second;
  }

  const std::pair<interval<T>, interval<T>>& c12(const interval<T>& tau) {
    auto key = std::make_pair(static_cast<long double>(tau.lo()), static_cast<long double>(tau.hi()));
    auto it = ccache_.find(key);
    if (it != ccache_.end()) return it->second;
    auto v = c12_constants(interval<T>(1) - tau, cfg_.f.e.bernoulli_cutoff, true);
    return ccache_.emplace(key, v).first->second;
  }

  cell_inputs<T> inputs(const interval<T>& q, const interval<T>& tau, bool scaled) {
    cell_inputs<T> in;
    in.q = q;
    in.tau = tau;
    in.scaled = scaled;
    const auto& c = c12(tau);
    in.c1 = c.first * interval<T>(cfg_.f.e.mut.c1);
    in.c2 = c.second;
    in.pv = make_pv_bounds<T>(cfg_.range.par, q, cfg_.range.q_lo, cfg_.f.e.pomerance);
    return in;
  }

  interval<T> B(const interval<T>& q) const { return l1_lower<T>(static_cast<double>(q.lo()), static_cast<double>(q.hi())); }

  // x values to try on a cell whose taus satisfy tau <= tau_hi
  std::vector<T> candidates(const interval<T>& q, T tau_hi, bool* clipped) {
    std::vector<T> out;
    const T lmax = (interval<T>(1) / interval<T>(tau_hi)).lo() * (1 - 1e-12);
    const T lfloor = std::log(static_cast<T>(cfg_.x_floor));
    auto push = [&](T l) {
      if (l > lmax) l = lmax;
      if (l < lfloor) return;
      for (T v : out)
        if (std::abs(std::log(v) - l) < 1e-3) return;
      out.push_back(std::exp(l));
    };
    const T lcfg = static_cast<T>(cfg_.log10_x) * std::log(T(10));
    if (clipped && lcfg > lmax) *clipped = true;
    push(lcfg);
    if (cfg_.adaptive_x) {
      auto in = inputs(q, interval<T>(tau_hi), false);
      const T base = std::log(in.pv.prefix.hi() * std::sqrt(q.hi()) / B(q).lo());
      push(base + std::log(T(10)));
      push(base + 3 * std::log(T(10)));
      push(lmax);
    }
    return out;
  }

  best eval(const interval<T>& q, const interval<T>& tau, const std::vector<T>& xs) {
    best b;
    auto in = inputs(q, tau, false);
    const auto Bq = B(q);
    const auto& z = zeta_term(tau);
    for (T x : xs) {
      interval<T> f;
      try {
        f = f_parts(in, x, Bq, cfg_.f, &z).f;
      } catch (const domain_error&) {
        continue;
      }
      if (!b.ok || f.hi() < b.f.hi()) b = {f, x, true};
    }
    return b;
  }

  // tau^2 F over tau in (0, tau_f]
  interval<T> eval_scaled(const interval<T>& q, T tau_f, T x) {
    auto in = inputs(q, interval<T>(0, tau_f), true);
    const interval<T> z = interval<T>(2) * zeta_deriv(1, interval<T>(2) - interval<T>(2) * in.tau, cfg_.f.zeta);
    return f_parts(in, x, B(q), cfg_.f, &z).f;
  }

 private:
  const candidate_config& cfg_;
  std::map<std::pair<long double, long double>, interval<T>> zcache_;
  std::map<std::pair<long double, long double>, std::pair<interval<T>, interval<T>>> ccache_;
};

struct work_cell {
  ival q, tau;
  int depth;
};

}  // namespace detail

inline verification_certificate certify(const candidate_config& cfg) {
  using detail::work_cell;
  verification_certificate cert;
  cert.config = cfg;
  cfg.range.validate();
  if (!(cfg.c > 0)) throw domain_error("c must be positive");
  if (!(cfg.x_floor >= 4)) throw domain_error("x_floor must be at least 4");

  detail::cell_evaluator<double> ev(cfg);
  detail::cell_evaluator<long double> ev_ld(cfg);
  const ival Qall = cfg.range.domain<double>();
  const double tmax_all = detail::tau_max_for(cfg.c, Qall.lo());
  if (tmax_all >= 0.5) {
    cert.status = cert_status::failed;
    cert.note = "tau range reaches 1/2";
    return cert;
  }

  // corner check: the largest tau at the smallest modulus
  {
    const ival qc(Qall.lo());
    const ival tc(tmax_all);
    auto xs = ev.candidates(qc, tmax_all, &cert.config_x_clipped);
    auto b = ev.eval(qc, tc, xs);
    ++cert.cells_examined;
    if (!b.ok || b.f.lo() >= 0) {
      cert.status = cert_status::failed;
      cert.worst = {qc, tc, b.ok ? b.f : ival(0), b.x};
      cert.note = "F >= 0 at (q_lo, c/log q_lo)";
      return cert;
    }
  }

  // small tau: tau^2 F < 0 on (0, tau_f]
  double tau_f = std::min(std::pow(10.0, cfg.tau_floor_exponent), tmax_all / 2);
  {
    const double P = make_pv_bounds<double>(cfg.range.par, Qall, cfg.range.q_lo, cfg.f.e.pomerance).prefix.hi();
    const double Bv = ev.B(Qall).lo();
    const double L = std::min(std::log(P * std::sqrt(Qall.hi()) / Bv) + 10, 690.0);
    const double xd = std::exp(L);
    for (int k = 0; k < 12; ++k, tau_f /= 10) {
      if (tau_f * L >= 0.5) continue;
      ival f{0};
      try {
        f = ev.eval_scaled(Qall, tau_f, xd);
      } catch (const domain_error&) {
        continue;
      }
      ++cert.cells_examined;
      if (strictly_negative(f)) {
        cert.dominance = true;
        break;
      }
    }
    cert.tau_floor = tau_f;
    if (!cert.dominance) {
      cert.status = cert_status::inconclusive;
      cert.note = "small-tau dominance not established";
      return cert;
    }
  }

  // initial cells: one q cell, tau split into decades
  std::deque<work_cell> queue;
  for (double t = tau_f; t < tmax_all; t *= 10) queue.push_back({Qall, ival(t, std::min(t * 10, tmax_all)), 0});

  std::mt19937 rng(cfg.shuffle_seed);
  double worst_hi = -std::numeric_limits<double>::infinity();

  while (!queue.empty()) {
    if (cfg.shuffle_seed != 0) {
      std::uniform_int_distribution<size_t> pick(0, queue.size() - 1);
      std::swap(queue.front(), queue[pick(rng)]);
    }
    work_cell w = queue.front();
    queue.pop_front();
    if (++cert.cells_examined > cfg.cell_budget) {
      cert.status = cert_status::inconclusive;
      cert.note = "cell budget exhausted";
      cert.worst = {w.q, w.tau, ival(0), 0};
      return cert;
    }
    const double tcap = detail::tau_max_for(cfg.c, w.q.lo());
    if (w.tau.lo() > tcap) {
      ++cert.vacuous;
      continue;
    }
    const ival tau(w.tau.lo(), std::min(w.tau.hi(), tcap));
    auto xs = ev.candidates(w.q, tau.hi(), &cert.config_x_clipped);
    auto b = ev.eval(w.q, tau, xs);
    if (b.ok && !strictly_negative(b.f) && cfg.long_double_escalation && b.f.lo() < 0 &&
        b.f.width() < 1e-9 * std::max(1.0, b.f.mag())) {
      ++cert.escalations;
      std::vector<long double> xl(xs.begin(), xs.end());
      auto bl = ev_ld.eval(ival_ld(w.q), ival_ld(tau), xl);
      if (bl.ok) b = {ival(bl.f), static_cast<double>(bl.x), true};
    }
    if (b.ok && strictly_negative(b.f)) {
      ++cert.leaves;
      if (b.f.hi() > worst_hi) {
        worst_hi = b.f.hi();
        cert.worst = {w.q, tau, b.f, b.x};
      }
      continue;
    }
    // a point where every candidate is certainly nonnegative ends the run
    {
      const ival qp(w.q.lo()), tp(tau.hi());
      auto bp = ev.eval(qp, tp, ev.candidates(qp, tau.hi(), nullptr));
      if (!bp.ok || bp.f.lo() >= 0) {
        cert.status = cert_status::failed;
        cert.worst = {qp, tp, bp.ok ? bp.f : ival(0), bp.x};
        cert.note = "F >= 0 at a point of the domain";
        return cert;
      }
    }
    if (w.depth >= cfg.max_depth) {
      cert.status = cert_status::inconclusive;
      cert.worst = {w.q, tau, b.ok ? b.f : ival(0), b.x};
      cert.note = "depth limit reached";
      return cert;
    }
    // bisect the dimension whose collapse to a midpoint helps most
    const double qm = std::sqrt(w.q.lo()) * std::sqrt(w.q.hi());
    const double tm = tau.hi() > 2 * tau.lo() ? std::sqrt(tau.lo() * tau.hi()) : tau.mid();
    bool split_q = w.q.hi() > w.q.lo() * (1 + 1e-12);
    bool split_t = tau.hi() > tau.lo() * (1 + 1e-12);
    if (split_q && split_t && b.ok) {
      auto bq = ev.eval(ival(qm), tau, {b.x});
      auto bt = ev.eval(w.q, ival(tm), {b.x});
      double hq = bq.ok ? bq.f.hi() : INFINITY, ht = bt.ok ? bt.f.hi() : INFINITY;
      if (hq < ht)
        split_t = false;
      else
        split_q = false;
    }
    if (split_q && !split_t) {
      queue.push_back({ival(w.q.lo(), qm), w.tau, w.depth + 1});
      queue.push_back({ival(qm, w.q.hi()), w.tau, w.depth + 1});
    } else if (split_t) {
      queue.push_back({w.q, ival(tau.lo(), tm), w.depth + 1});
      queue.push_back({w.q, ival(tm, tau.hi()), w.depth + 1});
    } else {
      cert.status = cert_status::inconclusive;
      cert.worst = {w.q, tau, b.ok ? b.f : ival(0), b.x};
      cert.note = "cell cannot be split further";
      return cert;
    }
  }
  cert.status = cert_status::certified;
  return cert;
}

// F over a single cell at the configured x
template <class T>
interval<T> f_value(const interval<T>& q_cell, const interval<T>& tau_cell, const candidate_config& cfg) {
  auto in = make_cell(q_cell, tau_cell, cfg.range.par, cfg.range.q_lo, cfg.f.e);
  const T x = static_cast<T>(std::pow(10.0L, static_cast<long double>(cfg.log10_x)));
  return f_parts(in, x, l1_lower<T>(static_cast<double>(q_cell.lo()), static_cast<double>(q_cell.hi())), cfg.f).f;
}

}  // namespace pagecert
