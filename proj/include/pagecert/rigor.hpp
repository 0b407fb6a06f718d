#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pagecert {

struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

struct parse_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

template <class T>
inline T down(T x) {
  if (x == std::numeric_limits<T>::infinity()) return std::numeric_limits<T>::max();
  if (x == -std::numeric_limits<T>::infinity()) return x;
  return std::nextafter(x, -std::numeric_limits<T>::infinity());
}

template <class T>
inline T up(T x) {
  if (x == -std::numeric_limits<T>::infinity()) return std::numeric_limits<T>::lowest();
  if (x == std::numeric_limits<T>::infinity()) return x;
  return std::nextafter(x, std::numeric_limits<T>::infinity());
}

// libm transcendental functions are not correctly rounded; allow a few ulps.
inline constexpr int libm_ulps = 4;

template <class T>
inline T down_n(T x, int n) {
  for (int i = 0; i < n; ++i) x = down(x);
  return x;
}

template <class T>
inline T up_n(T x, int n) {
  for (int i = 0; i < n; ++i) x = up(x);
  return x;
}

}  // namespace detail

template <class T = double>
class interval {
 public:
  using value_type = T;

  constexpr interval() = default;
  interval(T v) : lo_(v), hi_(v) { check(); }  // NOLINT: implicit on purpose
  interval(T lo, T hi) : lo_(lo), hi_(hi) { check(); }

  template <class U>
  explicit interval(const interval<U>& o) {
    lo_ = static_cast<T>(o.lo());
    hi_ = static_cast<T>(o.hi());
    if (static_cast<U>(lo_) > o.lo()) lo_ = detail::down(lo_);
    if (static_cast<U>(hi_) < o.hi()) hi_ = detail::up(hi_);
  }

  T lo() const { return lo_; }
  T hi() const { return hi_; }
  T mid() const { return lo_ / 2 + hi_ / 2; }
  T width() const { return detail::up(hi_ - lo_); }
  T mag() const { return std::max(std::abs(lo_), std::abs(hi_)); }
  T mig() const { return contains(T(0)) ? T(0) : std::min(std::abs(lo_), std::abs(hi_)); }
  bool is_point() const { return lo_ == hi_; }

  bool contains(T v) const { return lo_ <= v && v <= hi_; }
  bool contains(const interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool subset_of(const interval& o) const { return o.contains(*this); }
  bool overlaps(const interval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }

  interval operator-() const { return {-hi_, -lo_}; }

  interval& operator+=(const interval& b) { return *this = *this + b; }
  interval& operator-=(const interval& b) { return *this = *this - b; }
  interval& operator*=(const interval& b) { return *this = *this * b; }
  interval& operator/=(const interval& b) { return *this = *this / b; }

  friend interval operator+(const interval& a, const interval& b) {
    return {detail::down(a.lo_ + b.lo_), detail::up(a.hi_ + b.hi_)};
  }
  friend interval operator-(const interval& a, const interval& b) {
    return {detail::down(a.lo_ - b.hi_), detail::up(a.hi_ - b.lo_)};
  }
  friend interval operator*(const interval& a, const interval& b) {
    T p[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
    for (T& v : p)
      if (std::isnan(v)) v = 0;  // 0 * inf
    T lo = *std::min_element(p, p + 4), hi = *std::max_element(p, p + 4);
    return {detail::down(lo), detail::up(hi)};
  }
  friend interval operator/(const interval& a, const interval& b) {
    if (b.contains(T(0))) throw domain_error("interval division by an interval containing zero");
    T p[4] = {a.lo_ / b.lo_, a.lo_ / b.hi_, a.hi_ / b.lo_, a.hi_ / b.hi_};
    T lo = *std::min_element(p, p + 4), hi = *std::max_element(p, p + 4);
    return {detail::down(lo), detail::up(hi)};
  }

  friend std::ostream& operator<<(std::ostream& os, const interval& a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "[%.17Lg, %.17Lg]", static_cast<long double>(a.lo_),
                  static_cast<long double>(a.hi_));
    return os << buf;
  }

 private:
  void check() const {
    if (std::isnan(lo_) || std::isnan(hi_)) throw domain_error("interval endpoint is NaN");
    if (lo_ > hi_) throw domain_error("interval with lo > hi");
  }

  T lo_{0}, hi_{0};
};

using ival = interval<double>;
using ival_ld = interval<long double>;

template <class T>
interval<T> hull(const interval<T>& a, const interval<T>& b) {
  return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

template <class T>
interval<T> intersect(const interval<T>& a, const interval<T>& b) {
  if (!a.overlaps(b)) throw domain_error("empty intersection");
  return {std::max(a.lo(), b.lo()), std::min(a.hi(), b.hi())};
}

template <class T>
interval<T> abs(const interval<T>& a) {
  if (a.lo() >= 0) return a;
  if (a.hi() <= 0) return -a;
  return {T(0), a.mag()};
}

template <class T>
interval<T> max(const interval<T>& a, const interval<T>& b) {
  return {std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

template <class T>
interval<T> min(const interval<T>& a, const interval<T>& b) {
  return {std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi())};
}

template <class T>
interval<T> sqr(const interval<T>& a) {
  T m = a.mig(), M = a.mag();
  return {std::max(T(0), detail::down(m * m)), detail::up(M * M)};
}

template <class T>
interval<T> sqrt(const interval<T>& a) {
  if (a.lo() < 0) throw domain_error("sqrt of an interval with negative points");
  return {std::max(T(0), detail::down(std::sqrt(a.lo()))), detail::up(std::sqrt(a.hi()))};
}

template <class T>
interval<T> exp(const interval<T>& a) {
  using std::exp;
  T lo = std::max(T(0), detail::down_n(exp(a.lo()), detail::libm_ulps));
  return {lo, detail::up_n(exp(a.hi()), detail::libm_ulps)};
}

template <class T>
interval<T> log(const interval<T>& a) {
  using std::log;
  if (!(a.lo() > 0)) throw domain_error("log of an interval touching zero");
  T lo = a.lo() == 1 ? T(0) : detail::down_n(log(a.lo()), detail::libm_ulps);
  T hi = a.hi() == 1 ? T(0) : detail::up_n(log(a.hi()), detail::libm_ulps);
  return {lo, hi};
}

// a^n, integer n
template <class T>
interval<T> pow(const interval<T>& a, int n) {
  if (n == 0) return interval<T>(1);
  if (n < 0) return interval<T>(1) / pow(a, -n);
  interval<T> r(1), b = a;
  if (n % 2 == 0) b = abs(a);
  for (int k = n; k > 0; k >>= 1) {
    if (k & 1) r = r * b;
    if (k > 1) b = b * b;
  }
  if (n % 2 == 0) r = {std::max(T(0), r.lo()), r.hi()};
  return r;
}

// a^b = exp(b log a), positive base
template <class T>
interval<T> pow(const interval<T>& a, const interval<T>& b) {
  if (!(a.lo() > 0)) throw domain_error("pow with non-positive base");
  return exp(b * log(a));
}

template <class T>
bool strictly_negative(const interval<T>& a) {
  return a.hi() < 0;
}

template <class T>
bool strictly_positive(const interval<T>& a) {
  return a.lo() > 0;
}

template <class T>
interval<T> pi() {
  const T v = static_cast<T>(3.141592653589793238462643383279502884L);
  return {detail::down(v), detail::up(v)};
}

template <class T>
interval<T> euler_e() {
  const T v = static_cast<T>(2.718281828459045235360287471352662498L);
  return {detail::down(v), detail::up(v)};
}

template <class T>
interval<T> sqrt3() {
  return sqrt(interval<T>(3));
}

namespace detail {

struct decimal_digits {
  bool negative = false;
  std::string digits;  // no leading or trailing zeros, empty for zero
  long exponent = 0;   // value = 0.digits * 10^exponent
};

inline bool is_decimal_literal(std::string_view s) {
  size_t i = 0, n = s.size();
  if (i < n && (s[i] == '+' || s[i] == '-')) ++i;
  size_t int_digits = 0, frac_digits = 0;
  while (i < n && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++int_digits;
  if (i < n && s[i] == '.') {
    ++i;
    while (i < n && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++frac_digits;
  }
  if (int_digits + frac_digits == 0) return false;
  if (i < n && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < n && (s[i] == '+' || s[i] == '-')) ++i;
    size_t e = 0;
    while (i < n && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++e;
    if (e == 0 || e > 6) return false;
  }
  return i == n;
}

inline decimal_digits normalize(std::string_view s) {
  decimal_digits d;
  size_t i = 0;
  if (s[i] == '+' || s[i] == '-') d.negative = s[i++] == '-';
  std::string mant;
  long point = -1;
  for (; i < s.size() && s[i] != 'e' && s[i] != 'E'; ++i) {
    if (s[i] == '.')
      point = static_cast<long>(mant.size());
    else
      mant.push_back(s[i]);
  }
  if (point < 0) point = static_cast<long>(mant.size());
  long e10 = i < s.size() ? std::strtol(std::string(s.substr(i + 1)).c_str(), nullptr, 10) : 0;
  size_t first = mant.find_first_not_of('0');
  if (first == std::string::npos) return {};
  size_t last = mant.find_last_not_of('0');
  d.digits = mant.substr(first, last - first + 1);
  d.exponent = point - static_cast<long>(first) + e10;
  return d;
}

// exact decimal expansion of a binary floating value, or nullopt if too long
template <class T>
std::optional<decimal_digits> exact_decimal(T v) {
  std::vector<char> buf(1300);
  int prec = 1100;
  std::snprintf(buf.data(), buf.size(), "%.*Le", prec, static_cast<long double>(v));
  std::string s(buf.data());
  size_t epos = s.find('e');
  std::string mant = s.substr(0, epos);
  if (mant.back() != '0') return std::nullopt;  // truncated
  return normalize(s);
}

}  // namespace detail

template <class T = double>
interval<T> make_enclosure(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  s = s.substr(b);
  if (!detail::is_decimal_literal(s)) throw parse_error("malformed decimal literal: '" + std::string(text) + "'");
  T v;
  if constexpr (std::is_same_v<T, long double>)
    v = std::strtold(s.c_str(), nullptr);
  else if constexpr (std::is_same_v<T, float>)
    v = std::strtof(s.c_str(), nullptr);
  else
    v = std::strtod(s.c_str(), nullptr);
  if (!std::isfinite(v)) throw parse_error("decimal literal out of range: '" + s + "'");
  auto lit = detail::normalize(s);
  auto ex = detail::exact_decimal(v);
  if (ex && ex->digits == lit.digits && ex->exponent == lit.exponent &&
      (lit.digits.empty() || ex->negative == lit.negative))
    return interval<T>(v);
  return {detail::down(v), detail::up(v)};
}

enum class op { add, sub, mul, div, exp, log, pow, sqrt };

template <class T>
interval<T> combine(op o, const interval<T>& a, const std::optional<interval<T>>& b = std::nullopt) {
  auto need = [&]() -> const interval<T>& {
    if (!b) throw domain_error("binary operation needs a second operand");
    return *b;
  };
  switch (o) {
    case op::add: return a + need();
    case op::sub: return a - need();
    case op::mul: return a * need();
    case op::div: return a / need();
    case op::exp: return exp(a);
    case op::log: return log(a);
    case op::pow: return pow(a, need());
    case op::sqrt: return sqrt(a);
  }
  throw domain_error("unknown operation");
}

}  // namespace pagecert
