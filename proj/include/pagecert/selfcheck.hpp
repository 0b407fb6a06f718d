#pragma once

#include <string>
#include <vector>

#include "oracle.hpp"
#include "table.hpp"

namespace pagecert {

struct suite_result {
  std::string name;
  int passed = 0;
  int total = 0;
  std::vector<std::string> failures;

  bool ok() const { return total > 0 && passed == total; }
  void record(bool good, const std::string& what) {
    ++total;
    if (good)
      ++passed;
    else
      failures.push_back(what);
  }
};

inline const std::vector<long>& cello_discriminants() {
  static const std::vector<long> d{5, 8, 12, -3, -4, -7};
  return d;
}

// power sums and log power sums against direct summation
inline suite_result check_power_sums() {
  suite_result r{"power sums"};
  for (const char* a : {"0.1", "0.5", "0.9"}) {
    const ival alpha = make_enclosure<double>(a);
    const oracle::real ar(a);
    for (long x : {10L, 100L, 1000L, 100000L}) {
      const double xd = static_cast<double>(x);
      const bool p = power_sum(xd, alpha).contains(oracle::enclose(oracle::power_sum(x, ar)));
      const bool l = log_power_sum(xd, alpha).contains(oracle::enclose(oracle::log_power_sum(x, ar)));
      r.record(p && l, std::string("alpha=") + a + " x=" + std::to_string(x));
    }
  }
  return r;
}

inline suite_result check_cello_grid(oracle::cello_mutation mut = {}) {
  suite_result r{"decomposition"};
  for (long d : cello_discriminants()) {
    const oracle::real_character chi(d);
    for (long x : {100L, 1000L})
      for (double tau : {0.01, 0.05}) {
        const bool ok = oracle::check_cello_report(chi, x, tau, mut).ok();
        r.record(ok, "d=" + std::to_string(d) + " x=" + std::to_string(x) + " tau=" + format_number(tau));
      }
  }
  return r;
}

inline suite_result check_lower_bound_grid() {
  suite_result r{"lower bound for the weighted sum"};
  const std::vector<long> xs{16, 100, 1000, 10000};
  for (long d : cello_discriminants()) {
    const oracle::real_character chi(d);
    for (double tau : {0.01, 0.05, 0.1}) {
      const auto v = oracle::direct_weighted_sums(chi, xs, oracle::real(tau));
      for (size_t i = 0; i < xs.size(); ++i)
        r.record(oracle::lower_bound_holds(v[i], xs[i], tau),
                 "d=" + std::to_string(d) + " x=" + std::to_string(xs[i]) + " tau=" + format_number(tau));
    }
  }
  return r;
}

inline suite_result check_g_values(long n_max = 100000, long m_max = 316, size_t count = 20) {
  suite_result r{"g(n)"};
  for (long d : oracle::fundamental_discriminants(3, 10000, count)) {
    const oracle::real_character chi(d);
    const auto g = oracle::g_table(chi, std::max(n_max, m_max * m_max));
    bool nonneg = true, squares = true, agree = true;
    for (long n = 1; n <= n_max; ++n) nonneg &= g[n] >= 0;
    for (long m = 1; m <= m_max; ++m) squares &= g[m * m] >= 1;
    for (long n = 1; n <= 10000; ++n)
      agree &= oracle::g_divisors(chi, n) == g[n] && oracle::g_prime_powers(chi, n) == g[n];
    r.record(nonneg && squares && agree, "d=" + std::to_string(d));
  }
  return r;
}

inline std::vector<suite_result> containment_suite() {
  return {check_power_sums(), check_cello_grid(), check_lower_bound_grid(), check_g_values()};
}

}  // namespace pagecert
