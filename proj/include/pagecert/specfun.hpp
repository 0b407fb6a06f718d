#pragma once

#include <cmath>

#include "rigor.hpp"

namespace pagecert {

struct pole_error : domain_error {
  using domain_error::domain_error;
};

// c + theta * r with |theta| <= 1
template <class T = double>
struct theta_term {
  interval<T> center;
  interval<T> radius;

  theta_term(interval<T> c, interval<T> r) : center(c), radius(r) {
    if (radius.lo() < 0) throw domain_error("theta radius must be nonnegative");
  }
  interval<T> as_enclosure() const {
    return {detail::down(center.lo() - radius.hi()), detail::up(center.hi() + radius.hi())};
  }
};

namespace detail {

template <class T>
interval<T> b3_bound() {  // sqrt(3)/36
  return sqrt3<T>() / interval<T>(36);
}

// B3(u) = u(u - 1/2)(u - 1)
template <class T>
interval<T> b3_poly(const interval<T>& u) {
  return u * (u - interval<T>(0.5)) * (u - interval<T>(1));
}

// max |B5(t)| on [0,1] is 0.024458...
template <class T>
interval<T> b5_bound() {
  return interval<T>(0.0245);
}

}  // namespace detail

template <class T>
interval<T> bernoulli3_fractional(const interval<T>& t) {
  if (t.lo() < 0) throw domain_error("bernoulli3_fractional needs t >= 0");
  const interval<T> M = detail::b3_bound<T>();
  const interval<T> full{-M.hi(), M.hi()};
  T n = std::floor(t.lo());
  if (std::floor(t.hi()) != n) return full;
  interval<T> u{t.lo() - n, t.hi() - n};  // exact
  interval<T> r = hull(detail::b3_poly(interval<T>(u.lo())), detail::b3_poly(interval<T>(u.hi())));
  const interval<T> s3 = sqrt3<T>();
  const interval<T> c1 = (interval<T>(3) - s3) / interval<T>(6);
  const interval<T> c2 = (interval<T>(3) + s3) / interval<T>(6);
  if (u.overlaps(c1)) r = hull(r, interval<T>(M.hi()));
  if (u.overlaps(c2)) r = hull(r, interval<T>(-M.hi()));
  return {std::max(r.lo(), -M.hi()), std::min(r.hi(), M.hi())};
}

namespace detail {

template <class T>
interval<T> npow(T n, const interval<T>& minus_s) {  // n^{-s}
  if (n == 1) return interval<T>(1);
  return exp(minus_s * log(interval<T>(n)));
}

// zeta(s) or zeta'(s) at a point s > 1: partial sum to N-1 plus an
// Euler-Maclaurin tail with k = 2.
template <class T>
interval<T> zeta_point(int order, T s0, long N) {
  using I = interval<T>;
  const I s(s0), ms = -s;
  const I one(1);
  I sum(0);
  for (long n = N - 1; n >= 1; --n) {
    I t = npow(T(n), ms);
    if (order == 1) t = t * log(I(T(n)));
    sum += t;
  }
  const I Nn(static_cast<T>(N));
  const I lN = log(Nn);
  const I fN = npow(T(N), ms);
  const I sm1 = s - one;
  const I rem = sqrt3<T>() / I(216);
  I tail;
  if (order == 0) {
    // f = t^-s
    I integral = fN * Nn / sm1;
    I fp = -s * fN / Nn;
    I fpp = s * (s + one) * fN / (Nn * Nn);
    I r = rem * fpp;
    tail = integral + fN / I(2) - fp / I(12) + I(-r.hi(), r.hi());
    return sum + tail;
  }
  // g = log t * t^-s, g'' = t^{-s-2}(s(s+1) log t - (2s+1)), monotone for N >= 7
  I integral = fN * Nn * (lN / sm1 + one / sqr(sm1));
  I g = lN * fN;
  I gp = fN / Nn * (one - s * lN);
  I gpp = fN / (Nn * Nn) * (s * (s + one) * lN - (I(2) * s + one));
  I r = rem * abs(gpp);
  tail = integral + g / I(2) - gp / I(12) + I(-r.hi(), r.hi());
  return -(sum + tail);
}

}  // namespace detail

struct zeta_options {
  double margin = 0.05;
  long cutoff = 2000;
};

// order 0: zeta(s), order 1: zeta'(s), for s > 1 + margin
template <class T>
interval<T> zeta_deriv(int order, const interval<T>& s, zeta_options opt = {}) {
  if (order != 0 && order != 1) throw domain_error("zeta_deriv order must be 0 or 1");
  if (!(s.lo() > 1 + opt.margin)) throw pole_error("zeta argument too close to the pole at 1");
  if (opt.cutoff < 8) throw domain_error("zeta cutoff too small");
  // zeta decreasing, zeta' increasing on s > 1
  if (order == 0) {
    auto a = detail::zeta_point(0, s.hi(), opt.cutoff);
    auto b = s.is_point() ? a : detail::zeta_point(0, s.lo(), opt.cutoff);
    return {a.lo(), b.hi()};
  }
  auto a = detail::zeta_point(1, s.lo(), opt.cutoff);
  auto b = s.is_point() ? a : detail::zeta_point(1, s.hi(), opt.cutoff);
  return {a.lo(), std::min(b.hi(), T(0))};
}

namespace detail {

// int_0^1 B3(u) (n+u)^{-beta} [log(n+u)] du, beta > 1
template <class T>
interval<T> bernoulli_unit(long n, const interval<T>& beta, bool with_log) {
  using I = interval<T>;
  const int m = n == 1 ? 8 : n == 2 ? 4 : n <= 4 ? 2 : 1;
  const T h = T(1) / m;
  const I M3 = b3_bound<T>();
  I total(0);
  for (int j = 0; j < m; ++j) {
    const T u0 = h * j;
    const T a = static_cast<T>(n) + u0;
    const I Ia(a), Ih(h), U(u0);
    const I b[4] = {b3_poly(U), I(3) * U * U - I(3) * U + I(0.5), I(3) * U - I(1.5), I(1)};
    const I r = Ih / Ia;
    const I L = log(Ia);
    I ck(1), Hk(0), rk(1), series(0);
    int k = 0;
    for (;; ++k) {
      I mom(0), hj(1);
      for (int q = 0; q < 4; ++q) {
        mom += b[q] * hj / I(T(k + q + 1));
        hj = hj * Ih;
      }
      I coef = with_log ? ck * (L - Hk) : ck;
      series += coef * rk * mom;
      // advance to k+1
      ck = ck * (-beta - I(T(k))) / I(T(k + 1));
      Hk = Hk + I(1) / (beta + I(T(k)));
      rk = rk * r;
      const int K = k + 1;
      I eK = with_log ? I(ck.mag()) * (L + Hk) : I(ck.mag());
      I rho = r * (beta + I(T(K))) / I(T(K + 1));
      if (with_log) rho = rho * (I(1) + I(1) / ((beta + I(T(K))) * (L + Hk)));
      if (rho.hi() < 1) {
        I tail = M3 * eK * rk / I(T(K + 1)) / (I(1) - rho);
        if (tail.hi() < T(1e-19) || K > 80) {
          series += I(-tail.hi(), tail.hi());
          break;
        }
      } else if (K > 200) {
        throw domain_error("bernoulli_unit series failed to converge");
      }
    }
    total += exp(-beta * L) * Ih * series;
  }
  return total;
}

// int_1^inf B3({t}) t^{-beta} [log t] dt
template <class T>
interval<T> bernoulli_integral(const interval<T>& beta, bool with_log, long N) {
  using I = interval<T>;
  I sum(0);
  for (long n = N - 1; n >= 1; --n) sum += bernoulli_unit(n, beta, with_log);
  // int_N^inf B3 f = f(N)/120 + (1/20) int B5 f'', and f' is monotone past N >= 2
  const I Nn(static_cast<T>(N));
  const I lN = log(Nn);
  const I p = exp(-beta * lN);
  I f = with_log ? lN * p : p;
  I fp = with_log ? p / Nn * (I(1) - beta * lN) : -beta * p / Nn;
  I r = b5_bound<T>() / I(20) * abs(fp);
  return sum + f / I(120) + I(-r.hi(), r.hi());
}

template <class T>
void check_unit_alpha(const interval<T>& alpha) {
  if (!(alpha.lo() > 0 && alpha.hi() < 1)) throw domain_error("alpha must lie in (0, 1)");
}

}  // namespace detail

inline constexpr long default_bernoulli_cutoff = 10000;

template <class T>
interval<T> c1_constant(const interval<T>& alpha, long cutoff = default_bernoulli_cutoff) {
  using I = interval<T>;
  detail::check_unit_alpha(alpha);
  const I beta = alpha + I(3);
  const I i3 = detail::bernoulli_integral(beta, false, cutoff);
  return I(0.5) + alpha / I(12) - alpha * (alpha + I(1)) * (alpha + I(2)) / I(6) * i3;
}

template <class T>
interval<T> c2_constant(const interval<T>& alpha, long cutoff = default_bernoulli_cutoff) {
  using I = interval<T>;
  detail::check_unit_alpha(alpha);
  const I beta = alpha + I(3);
  const I i3 = detail::bernoulli_integral(beta, false, cutoff);
  const I j3 = detail::bernoulli_integral(beta, true, cutoff);
  const I p = I(3) * alpha * alpha + I(6) * alpha + I(2);
  const I q = alpha * (alpha + I(1)) * (alpha + I(2));
  return I(-1) / I(12) + (p * i3 - q * j3) / I(6);
}

// both constants share the B3 integral
// allow_one admits alpha = 1, where the constants stay finite; the caller
// guarantees alpha <= 1, so rounding above 1 is trimmed
template <class T>
std::pair<interval<T>, interval<T>> c12_constants(interval<T> alpha, long cutoff, bool allow_one = false) {
  using I = interval<T>;
  if (allow_one) {
    if (alpha.hi() > 1 && alpha.hi() <= detail::up(T(1))) alpha = I(alpha.lo(), T(1));
    if (!(alpha.lo() > 0 && alpha.hi() <= 1)) throw domain_error("alpha must lie in (0, 1]");
  } else {
    detail::check_unit_alpha(alpha);
  }
  const I beta = alpha + I(3);
  const I i3 = detail::bernoulli_integral(beta, false, cutoff);
  const I j3 = detail::bernoulli_integral(beta, true, cutoff);
  const I q = alpha * (alpha + I(1)) * (alpha + I(2));
  const I p = I(3) * alpha * alpha + I(6) * alpha + I(2);
  return {I(0.5) + alpha / I(12) - q / I(6) * i3, I(-1) / I(12) + (p * i3 - q * j3) / I(6)};
}

// sum_{n <= x} n^-alpha, expanded at X = floor(x)
template <class T>
theta_term<T> power_sum_term(T x, const interval<T>& alpha, long cutoff = default_bernoulli_cutoff) {
  using I = interval<T>;
  if (!(x >= 1)) throw domain_error("power_sum needs x >= 1");
  detail::check_unit_alpha(alpha);
  const I X(std::floor(x)), lX = log(X), one(1);
  const I oma = one - alpha;
  const I xa = exp(-alpha * lX);
  I center = c1_constant(alpha, cutoff) + (exp(oma * lX) - one) / oma + xa / I(2) -
             alpha / I(12) * xa / X;
  I radius = detail::b3_bound<T>() / I(6) * alpha * (alpha + one) * xa / (X * X);
  return {center, radius};
}

template <class T>
interval<T> power_sum(T x, const interval<T>& alpha, long cutoff = default_bernoulli_cutoff) {
  return power_sum_term(x, alpha, cutoff).as_enclosure();
}

template <class T>
theta_term<T> log_power_sum_term(T x, const interval<T>& alpha, long cutoff = default_bernoulli_cutoff) {
  using I = interval<T>;
  if (!(x >= 1)) throw domain_error("log_power_sum needs x >= 1");
  detail::check_unit_alpha(alpha);
  const I X(std::floor(x)), lX = log(X), one(1);
  const I oma = one - alpha;
  const I xa = exp(-alpha * lX);
  const I x1a = exp(oma * lX);
  I center = c2_constant(alpha, cutoff) + x1a * lX / oma + (one - x1a) / sqr(oma) + xa * lX / I(2) +
             xa / X * (one - alpha * lX) / I(12);
  I bracket = alpha * (alpha + one) * lX +
              (I(4) * alpha * alpha + I(7) * alpha + I(2)) / (alpha + I(2));
  I radius = detail::b3_bound<T>() / I(6) * xa / (X * X) * bracket;
  return {center, radius};
}

template <class T>
interval<T> log_power_sum(T x, const interval<T>& alpha, long cutoff = default_bernoulli_cutoff) {
  return log_power_sum_term(x, alpha, cutoff).as_enclosure();
}

// f(alpha, x) = 2 u^alpha (1 - alpha log u) / alpha^2, u = sqrt(x) - 1
template <class T>
interval<T> tail_f(const interval<T>& alpha, T x) {
  using I = interval<T>;
  if (!(x > 4)) throw domain_error("tail_f needs x > 4");
  if (alpha.contains(T(0))) throw domain_error("tail_f alpha interval contains 0");
  const I u = sqrt(I(x)) - I(1);
  const I lu = log(u);
  return I(2) * exp(alpha * lu) * (I(1) - alpha * lu) / sqr(alpha);
}

}  // namespace pagecert
