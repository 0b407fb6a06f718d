#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <vector>

#include <boost/math/special_functions/zeta.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "criterion.hpp"

// Brute-force ground truth at desk scale, in 50-digit floating point.
namespace pagecert::oracle {

using real = boost::multiprecision::cpp_bin_float_50;

struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr long direct_sum_limit = 10000000;

// Kronecker symbol (a | n), n >= 0
inline int kronecker(long a, long n) {
  static const int tab[8] = {0, 1, 0, -1, 0, -1, 0, 1};
  if (n < 0) throw domain_error("kronecker needs n >= 0");
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if (a % 2 == 0 && n % 2 == 0) return 0;
  int v = 0;
  while (n % 2 == 0) ++v, n /= 2;
  int k = (v % 2 == 0) ? 1 : tab[a & 7];
  long b = n;
  for (;;) {
    if (a == 0) return b > 1 ? 0 : k;
    v = 0;
    while (a % 2 == 0) ++v, a /= 2;
    if (v % 2 == 1) k *= tab[b & 7];
    if (a & b & 2) k = -k;
    const long r = std::labs(a);
    a = b % r;
    b = r;
  }
}

inline bool squarefree(long m) {
  m = std::labs(m);
  for (long p = 2; p * p <= m; ++p)
    if (m % (p * p) == 0) return false;
  return m != 0;
}

inline bool is_fundamental(long d) {
  if (d == 1 || d == 0) return false;
  const long r = ((d % 4) + 4) % 4;
  if (r == 1) return squarefree(d);
  if (r != 0) return false;
  const long m = d / 4, rm = ((m % 4) + 4) % 4;
  return (rm == 2 || rm == 3) && squarefree(m);
}

class real_character {
 public:
  explicit real_character(long d) : d_(d), q_(std::labs(d)) {
    if (!is_fundamental(d)) throw domain_error("not a fundamental discriminant: " + std::to_string(d));
    table_.resize(q_);
    for (long n = 0; n < q_; ++n) table_[n] = static_cast<int8_t>(kronecker(d, n));
    long s = 0, lo = 0, hi = 0;
    for (long n = 1; n <= q_; ++n) {
      s += table_[n % q_];
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    max_prefix_ = std::max(hi, -lo);
    range_ = hi - lo;
  }

  long discriminant() const { return d_; }
  long modulus() const { return q_; }
  parity par() const { return d_ > 0 ? parity::even : parity::odd; }
  int operator()(long n) const { return table_[((n % q_) + q_) % q_]; }
  // max |sum_{n<=t} chi(n)|
  long max_prefix() const { return max_prefix_; }
  // max |sum_{a<n<=b} chi(n)|
  long max_interval() const { return range_; }

 private:
  long d_, q_;
  std::vector<int8_t> table_;
  long max_prefix_ = 0, range_ = 0;
};

// fundamental discriminants d with lo <= |d| <= hi, alternating signs by size
inline std::vector<long> fundamental_discriminants(long lo, long hi, size_t count) {
  std::vector<long> out;
  for (long m = lo; m <= hi && out.size() < count; ++m)
    for (long d : {m, -m})
      if (out.size() < count && is_fundamental(d)) out.push_back(d);
  return out;
}

inline long g_divisors(const real_character& chi, long n) {
  if (n < 1) throw domain_error("g needs n >= 1");
  long s = 0;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    s += chi(d);
    if (d * d != n) s += chi(n / d);
  }
  return s;
}

inline long g_prime_powers(const real_character& chi, long n) {
  if (n < 1) throw domain_error("g needs n >= 1");
  long prod = 1;
  for (long p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) n /= p, ++e;
    if (!e) continue;
    const int c = chi(p);
    prod *= c == 1 ? e + 1 : c == 0 ? 1 : (e % 2 == 0);
  }
  if (n > 1) prod *= 1 + chi(n);
  return prod;
}

struct disagreement : std::logic_error {
  using std::logic_error::logic_error;
};

inline long g_value(const real_character& chi, long n) {
  const long a = g_divisors(chi, n), b = g_prime_powers(chi, n);
  if (a != b) throw disagreement("g(" + std::to_string(n) + ") differs between evaluations");
  return a;
}

// g(1..x) by sieve
inline std::vector<long> g_table(const real_character& chi, long x) {
  std::vector<long> g(x + 1, 0);
  for (long d = 1; d <= x; ++d) {
    const int c = chi(d);
    if (c)
      for (long n = d; n <= x; n += d) g[n] += c;
  }
  return g;
}

// sum_{n<=x} g(n) log n / n^{1 - tau}
inline real direct_weighted_sum(const real_character& chi, long x, const real& tau) {
  if (x > direct_sum_limit) throw resource_error("direct sums are limited to x <= 1e7");
  real s = 0;
  const auto g = g_table(chi, x);
  for (long n = 2; n <= x; ++n)
    if (g[n]) {
      const real ln = log(real(n));
      s += g[n] * ln * exp((tau - 1) * ln);
    }
  return s;
}

// the same sum at each checkpoint, in one pass
inline std::vector<real> direct_weighted_sums(const real_character& chi, const std::vector<long>& xs,
                                              const real& tau) {
  const long xmax = *std::max_element(xs.begin(), xs.end());
  if (xmax > direct_sum_limit) throw resource_error("direct sums are limited to x <= 1e7");
  const auto g = g_table(chi, xmax);
  std::vector<real> prefix(xmax + 1, 0);
  real s = 0;
  for (long n = 2; n <= xmax; ++n) {
    if (g[n]) {
      const real ln = log(real(n));
      s += g[n] * ln * exp((tau - 1) * ln);
    }
    prefix[n] = s;
  }
  std::vector<real> out;
  for (long x : xs) out.push_back(prefix[x]);
  return out;
}

// double enclosure of a 50-digit value
inline ival enclose(const real& v) {
  const double d = static_cast<double>(v);
  return {detail::down(d), detail::up(d)};
}

inline real power_sum(long x, const real& alpha) {
  real s = 0;
  for (long n = 1; n <= x; ++n) s += exp(-alpha * log(real(n)));
  return s;
}

inline real log_power_sum(long x, const real& alpha) {
  real s = 0;
  for (long n = 2; n <= x; ++n) {
    const real ln = log(real(n));
    s += ln * exp(-alpha * ln);
  }
  return s;
}

inline real zeta(const real& s) { return boost::math::zeta(s); }

// central difference with an O(h^2) error far below the working precision of doubles
inline real zeta_prime(const real& s) {
  const real h("1e-16");
  return (boost::math::zeta(s + h) - boost::math::zeta(s - h)) / (2 * h);
}

// L(s, chi) for real s > 0 from a truncated sum; |sum_{n>N}| <= 2 M N^{-s}
inline ival direct_L(const real_character& chi, double s, long cutoff) {
  if (cutoff < chi.modulus()) throw domain_error("direct_L needs cutoff >= modulus");
  if (cutoff > direct_sum_limit) throw resource_error("direct sums are limited to 1e7 terms");
  if (!(s > 0)) throw domain_error("direct_L needs s > 0");
  real sum = 0;
  const real S(s);
  for (long n = 1; n <= cutoff; ++n)
    if (const int c = chi(n)) sum += c * exp(-S * log(real(n)));
  const real tail = 2 * real(chi.max_prefix()) * exp(-S * log(real(cutoff)));
  return enclose(sum) + ival(-1, 1) * enclose(tail);
}

// sum_{d<=x} chi(d) d^{-s} and sum_{d<=x} chi(d) log d d^{-s}
struct truncated_l {
  real l, l_log;
};

inline truncated_l truncated_sums(const real_character& chi, long x, const real& s) {
  truncated_l t{0, 0};
  for (long d = 1; d <= x; ++d)
    if (const int c = chi(d)) {
      const real ld = log(real(d)), p = exp(-s * ld);
      t.l += c * p;
      t.l_log += c * ld * p;
    }
  return t;
}

struct cello_report {
  real lhs;
  real main;       // K1 L'_x(1 - tau) + K2 L_x(1 - tau) - coef L_x(1)
  real boundary;   // Euler-Maclaurin boundary terms summed over d
  double w = 0;    // bound for the remaining integrals
  double e = 0;    // err_bound + w with G the exact interval bound of chi
  bool identity_ok = false;  // |lhs - main - boundary| <= w
  bool bound_ok = false;     // |lhs - main| <= e
  bool ok() const { return identity_ok && bound_ok; }
};

struct cello_mutation {
  double w_scale = 1;
  double err_scale = 1;
};

// The decomposition of sum_{n<=x} g(n) log n / n^{1-tau} into main terms and
// error, with F_d(t) = log(dt) (dt)^{-alpha}, alpha = 1 - tau, X = x/d:
//   sum_{m<=X} F_d(m) = main_d - P1(X) F_d(X) + P2(X) F_d'(X) - P3(X) F_d''(X) - int_X^inf P3 F_d'''
inline cello_report check_cello_report(const real_character& chi, long x, double tau, cello_mutation mut = {}) {
  if (x < 16) throw domain_error("check_cello needs x >= 16");
  if (!(tau > 0 && tau < 0.5)) throw domain_error("check_cello needs tau in (0, 1/2)");
  cello_report r;
  const real T(tau), a = 1 - T, X(x), lx = log(X);
  r.lhs = direct_weighted_sum(chi, x, T);
  const real K1 = -zeta(a), K2 = -zeta_prime(a);
  const real xt = exp(T * lx), coef = xt / T * (1 / T - lx);
  const auto tl = truncated_sums(chi, x, a);
  const auto t1 = truncated_sums(chi, x, real(1));
  r.main = -K1 * tl.l_log + K2 * tl.l - coef * t1.l;

  // boundary terms
  const real xa = exp(-a * lx);  // x^{-alpha}
  real b = 0;
  for (long d = 1; d <= x; ++d) {
    const int c = chi(d);
    if (!c) continue;
    const long rem = x % d;
    const real frac = real(rem) / d;  // {x/d}
    const real p1 = frac - real(0.5);
    const real p2 = (frac * frac - frac + real(1) / 6) / 2;
    const real p3 = (frac * frac * frac - real(1.5) * frac * frac + frac / 2) / 6;
    const real D(d);
    const real F = lx * xa;
    const real F1 = D * xa / X * (1 - a * lx);
    const real F2 = D * D * xa / (X * X) * (a * (a + 1) * lx - (2 * a + 1));
    b += c * (-p1 * F + p2 * F1 - p3 * F2);
  }
  r.boundary = b;
  const ival tau_i(tau);
  r.w = mut.w_scale * w_sound(static_cast<double>(x), tau_i).hi();
  const ival G(static_cast<double>(chi.max_interval()));
  r.e = mut.err_scale * err_bound(static_cast<double>(x), tau_i, G).hi() + r.w;
  r.identity_ok = abs(r.lhs - r.main - r.boundary) <= r.w;
  r.bound_ok = abs(r.lhs - r.main) <= r.e;
  return r;
}

inline bool check_cello(const real_character& chi, long x, double tau) { return check_cello_report(chi, x, tau).ok(); }

// -2 zeta'(2 - 2 tau) - f(2 tau - 1, x) <= sum_{n<=x} g(n) log n / n^{1-tau}
inline bool lower_bound_holds(const real& direct, long x, double tau) {
  const ival t(tau);
  const ival lower = ival(-2) * zeta_deriv(1, ival(2) - ival(2) * t) - tail_f(ival(2) * t - ival(1), static_cast<double>(x));
  return direct >= real(lower.lo());
}

}  // namespace pagecert::oracle
