#pragma once

#include <cmath>
#include <string>

#include "rigor.hpp"

namespace pagecert {

enum class parity { even = 0, odd = 1 };

inline const char* to_string(parity p) { return p == parity::even ? "even" : "odd"; }

inline parity parse_parity(const std::string& s) {
  if (s == "even" || s == "0") return parity::even;
  if (s == "odd" || s == "1") return parity::odd;
  throw parse_error("unknown parity '" + s + "'");
}

// E_0 = 2/pi^2, E_1 = 1/(2 pi)
template <class T = double>
interval<T> pv_leading(parity p) {
  const interval<T> pi_ = pi<T>();
  return p == parity::even ? interval<T>(2) / sqr(pi_) : interval<T>(1) / (interval<T>(2) * pi_);
}

inline constexpr double even_start = 4e5;
inline constexpr double odd_start = 3e8;
inline constexpr double pv_min_modulus = 1200;

struct modulus_range {
  double q_lo = even_start;
  double q_hi = even_start;
  parity par = parity::even;
  bool start_override = false;  // permit q_lo below the verified starting moduli
  bool small_q = false;         // oracle-only: permit q_lo below 1200

  modulus_range() = default;
  modulus_range(double lo, double hi, parity p, bool override_start = false, bool small = false)
      : q_lo(lo), q_hi(hi), par(p), start_override(override_start), small_q(small) {
    validate();
  }

  void validate() const {
    if (!(q_lo <= q_hi)) throw domain_error("modulus range needs q_lo <= q_hi");
    if (!small_q && q_lo < pv_min_modulus) throw domain_error("modulus range needs q_lo >= 1200");
    if (small_q && q_lo < 3) throw domain_error("modulus range needs q_lo >= 3");
    if (!start_override && !small_q) {
      if (par == parity::even && q_lo < even_start)
        throw domain_error("even ranges start at 4e5 unless overridden");
      if (par == parity::odd && q_lo < odd_start)
        throw domain_error("odd ranges start at 3e8 unless overridden");
    }
  }

  // the moduli are integers given by decimal text; widen by an ulp
  template <class T = double>
  interval<T> domain() const {
    return {detail::down(static_cast<T>(q_lo)), detail::up(static_cast<T>(q_hi))};
  }
};

// A_0 = 1/pi^2 + 1/(2 log q0), A_1 = 1/(2 pi) + 1/log q0
template <class T = double>
interval<T> pv_constant(parity p, double q0) {
  using I = interval<T>;
  if (!(q0 >= pv_min_modulus)) throw domain_error("pv_constant needs q0 >= 1200");
  const I lq = log(I(detail::down(static_cast<T>(q0))));
  const I pi_ = pi<T>();
  if (p == parity::even) return I(1) / sqr(pi_) + I(1) / (I(2) * lq);
  return I(1) / (I(2) * pi_) + I(1) / lq;
}

// Bounds on |sum_{n<=t} chi(n)| (prefix) and |sum_{M<n<=M+N} chi(n)| (general)
// for every primitive character of the given parity with modulus in q.
// The even A_0 is half of the general bound and relies on the M = 0 halving,
// which `pomerance` enables; otherwise even prefix sums use the general bound.
template <class T = double>
struct pv_bounds {
  interval<T> prefix;
  interval<T> general;
};

template <class T = double>
interval<T> pv_general(parity p, const interval<T>& q) {
  using I = interval<T>;
  const I Q(q.hi());
  const I sq = sqrt(Q);
  return pv_leading<T>(p) * sq * log(Q) + sq;
}

template <class T = double>
interval<T> pv_prefix_from_A(const interval<T>& A, const interval<T>& q) {
  const interval<T> Q(q.hi());
  return A * sqrt(Q) * log(Q);
}

template <class T = double>
pv_bounds<T> make_pv_bounds(parity p, const interval<T>& q, double q0, bool pomerance) {
  using I = interval<T>;
  const I G = pv_general<T>(p, q);
  const I A = pv_constant<T>(p, q0);
  const I PA = pv_prefix_from_A(A, q);
  if (p == parity::odd) return {PA, I(std::min(PA.hi(), G.hi()))};
  return {pomerance ? PA : G, G};
}

enum class h_kind { log_over_power, inverse_power, inverse };

namespace detail {

// int_a^b u^j e^{tau u} du for a point tau >= 0, 0 <= a <= b, j in {0, 1}
template <class T>
interval<T> exp_moment_point(int j, T tau, const interval<T>& a, const interval<T>& b) {
  using I = interval<T>;
  const I t(tau);
  const T y = tau * b.hi();
  if (tau == 0) {
    if (j == 0) return b - a;
    return (sqr(b) - sqr(a)) / I(2);
  }
  if (y > 0.5) {
    const I ea = exp(t * a), eb = exp(t * b);
    if (j == 0) return (eb - ea) / t;
    return (eb * (t * b - I(1)) - ea * (t * a - I(1))) / sqr(t);
  }
  // series: sum_k tau^k (b^{k+j+1} - a^{k+j+1}) / (k! (k+j+1))
  I sum(0), tk(1), bp = pow(b, j + 1), ap = pow(a, j + 1), fact(1);
  for (int k = 0;; ++k) {
    sum += tk * (bp - ap) / (fact * I(T(k + j + 1)));
    tk = tk * t;
    bp = bp * b;
    ap = ap * a;
    fact = fact * I(T(k + 1));
    const I next = tk * bp / (fact * I(T(k + j + 2)));
    const T ratio = y / (k + 2);
    if (next.hi() / (1 - ratio) < 1e-18 * sum.mag() || k > 60) {
      T r = detail::up(next.hi() / (1 - ratio));
      return sum + I(0, r);
    }
  }
}

// integral over t in [z, Z] of h(t); increasing in tau for z >= 1
template <class T>
interval<T> h_integral(h_kind k, const interval<T>& tau, const interval<T>& z, const interval<T>& Z) {
  using I = interval<T>;
  const I a = log(z), b = log(Z);
  if (k == h_kind::inverse) return b - a;
  const int j = k == h_kind::log_over_power ? 1 : 0;
  I lo = exp_moment_point(j, tau.lo(), a, b);
  I hi = tau.is_point() ? lo : exp_moment_point(j, tau.hi(), a, b);
  return {lo.lo(), hi.hi()};
}

template <class T>
interval<T> h_value(h_kind k, const interval<T>& tau, const interval<T>& z) {
  using I = interval<T>;
  const I lz = log(z);
  switch (k) {
    case h_kind::inverse: return I(1) / z;
    case h_kind::inverse_power: return exp((tau - I(1)) * lz);
    case h_kind::log_over_power: return lz * exp((tau - I(1)) * lz);
  }
  return I(0);
}

}  // namespace detail

// |sum_{n>z} chi(n) h(n)| given |sum_{n<=t} chi(n)| <= min(t, P)
template <class T>
interval<T> tail_bound_prefix(h_kind k, const interval<T>& tau, T z, const interval<T>& P) {
  using I = interval<T>;
  if (!(z >= 1)) throw domain_error("tail_bound needs z >= 1");
  if (k == h_kind::log_over_power) {
    // h decreasing needs log z >= 1/(1 - tau)
    if (!(log(I(z)).lo() >= (I(1) / (I(1) - tau)).hi()))
      throw domain_error("log-over-power kernel is not decreasing at z");
  }
  const I Z(z);
  const I hz = detail::h_value(k, tau, Z);
  if (z >= P.hi()) {
    return I(2) * I(P.hi()) * hz;
  }
  return I(2) * Z * hz + detail::h_integral(k, tau, Z, I(P.hi()));
}

// valid for every q in the range
template <class T>
interval<T> tail_bound(h_kind k, const interval<T>& tau, T z, const modulus_range& range, const interval<T>& A) {
  const interval<T> P = pv_prefix_from_A(A, range.domain<T>());
  return tail_bound_prefix(k, tau, z, P);
}

// L(1, chi) >= B / sqrt(q)
// moduli are integers, so an outward-rounded cell is trimmed back first
template <class T = double>
interval<T> l1_lower(double q_lo, double q_hi) {
  q_lo = std::ceil(q_lo);
  q_hi = std::floor(q_hi);
  if (q_lo < even_start) throw domain_error("L(1) lower bound needs q >= 4e5");
  if (q_hi <= 1e7) return make_enclosure<T>("79.2");
  return interval<T>(12);
}

template <class T = double>
interval<T> l1_lower(const modulus_range& r) {
  return l1_lower<T>(r.q_lo, r.q_hi);
}

}  // namespace pagecert
