#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "charbounds.hpp"
#include "specfun.hpp"

namespace pagecert {

// sound: decomposition with periodic Bernoulli boundary terms (valid for real x/d)
// printed: the error assembly read literally off the printed identity
enum class e_model { sound, printed };
// lemma: f(2 tau - 1, x) at sqrt(x) - 1; oliver: the simplified x0 form
enum class eagle_form { lemma, oliver };

template <class T>
struct k_pair {
  interval<T> k1, k2;
};

namespace detail {

template <class T>
void check_tau(const interval<T>& tau) {
  if (!(tau.lo() > 0 && tau.hi() < 0.5)) throw domain_error("tau must lie in (0, 1/2)");
}

template <class T>
interval<T> p3_bound() {  // sup |B3({t})| / 6
  return sqrt3<T>() / interval<T>(216);
}

}  // namespace detail

// coefficients of L'(1 - tau) and L(1 - tau): K1 = 1/tau - C1(1 - tau), K2 = C2(1 - tau) + 1/tau^2
template <class T>
k_pair<T> k_coefficients(const interval<T>& tau, long cutoff = default_bernoulli_cutoff) {
  using I = interval<T>;
  detail::check_tau(tau);
  auto [c1, c2] = c12_constants(I(1) - tau, cutoff);
  const I it = I(1) / tau;
  return {it - c1, c2 + sqr(it)};
}

// W as printed, with x0 = x_ref
template <class T>
interval<T> w_term(T x, const interval<T>& tau, T x_ref) {
  using I = interval<T>;
  detail::check_tau(tau);
  if (!(x_ref >= 4 && x >= x_ref)) throw domain_error("w_term needs x >= x_ref >= 4");
  const I X(x), lx = log(X), xt = exp(tau * lx), one(1);
  const I s3 = sqrt3<T>();
  const I r = one / I(x_ref);
  const I t1 = xt * lx * (one - tau) * (I(2) - tau) / (I(432) * s3) * (I(2) + r) * (one + r);
  const I inner = (one - tau) * (one + one / (I(72) * s3)) * lx + one +
                  (I(4) - I(3) * tau) / (I(72) * s3 * (I(2) - tau));
  const I t2 = xt / I(2) / (one + I(x_ref)) * inner;
  return t1 + t2;
}

// third-order Euler-Maclaurin remainder summed trivially over d <= x
template <class T>
interval<T> w_sound(T x, const interval<T>& tau) {
  using I = interval<T>;
  if (!(x >= 1)) throw domain_error("w_sound needs x >= 1");
  const I X(x), lx = log(X), a = I(1) - tau;
  const T Xf = std::floor(x);
  const I F(Xf);
  const I vol = F / X * ((F + I(1)) / X) * ((I(2) * F + I(1)) / X) / I(6);
  const I br = a * (a + I(1)) * lx + (I(4) * a * a + I(7) * a + I(2)) / (a + I(2));
  return detail::p3_bound<T>() * exp(tau * lx) * br * vol;
}

namespace detail {

template <class T>
interval<T> harmonic_upper(double m) {
  using I = interval<T>;
  if (m < 1) return I(0);
  if (m <= 100000) {
    I h(0);
    for (long k = static_cast<long>(m); k >= 1; --k) h += I(1) / I(T(k));
    return h;
  }
  const I M(static_cast<T>(m));
  return log(M) + I(0.5773) + I(1) / (I(2) * M);
}

template <class T>
interval<T> err_bound_at(T x, const interval<T>& tau, const interval<T>& G, double m1) {
  using I = interval<T>;
  const I X(x), lx = log(X), a = I(1) - tau, one(1);
  const I xt = exp(tau * lx);
  const T D = m1 < 1 ? std::floor(x) : std::floor(detail::up(x / static_cast<T>(m1 + 1)));
  const I Di(D), M1(static_cast<T>(m1));
  const I d1 = Di / X, d2 = (Di + one) / X, d3 = (I(2) * Di + one) / X;
  const I g(G.hi());
  const I p3 = p3_bound<T>();
  const I k1 = lx;
  const I k2 = abs(one - a * lx);
  const I k3 = abs(a * (a + one) * lx - (I(2) * a + one));
  I t1 = xt * k1 * d1 / I(2);
  I t2 = xt * k2 * d1 * d2 / I(24);
  I t3 = xt * k3 * p3 * d1 * d2 * d3 / I(6);
  if (m1 >= 1) {
    const I tail = one - one / (M1 + one);
    t1 += xt * k1 * I(1.5) * g * M1 / X;
    t2 += xt / X * k2 * g * (harmonic_upper<T>(m1) / I(3) + tail / I(12));
    t3 += xt / X * k3 * g * (p3 + one / I(12));
  }
  return t1 + t2 + t3;
}

}  // namespace detail

// |sum_{d<=x} chi(d) [-P1(x/d) c1 + d P2(x/d) c2 - d^2 P3(x/d) c3]| given
// |sum_{a<d<=b} chi(d)| <= G on every interval
template <class T>
interval<T> err_bound(T x, const interval<T>& tau, const interval<T>& G) {
  if (!(x >= 1)) throw domain_error("err_bound needs x >= 1");
  const double g = static_cast<double>(G.hi());
  const double xd = static_cast<double>(x);
  const double mstar = std::sqrt(xd / (3 * g));
  std::vector<double> cand{0};
  for (double f : {0.5, 0.7, 0.85, 1.0, 1.2, 1.4, 2.0}) {
    double m = std::floor(mstar * f);
    if (m >= 1 && m < xd) cand.push_back(m);
  }
  double best_m = 0;
  T best = std::numeric_limits<T>::infinity();
  for (double m : cand) {
    T v = detail::err_bound_at(x, tau, G, m).hi();
    if (v < best) best = v, best_m = m;
  }
  return detail::err_bound_at(x, tau, G, best_m);
}

// scale factors applied to single ingredients; used by the mutation checks
struct mutation {
  double w = 1, tail = 1, c1 = 1, b = 1;
  bool active() const { return w != 1 || tail != 1 || c1 != 1 || b != 1; }
};

struct e_options {
  e_model model = e_model::sound;
  bool pomerance = false;
  long bernoulli_cutoff = 32;
  mutation mut{};
};

// everything needed to evaluate E and F on a (q, tau) cell
template <class T>
struct cell_inputs {
  interval<T> q;
  interval<T> tau;
  interval<T> c1, c2;  // at alpha = 1 - tau
  pv_bounds<T> pv;
  bool scaled = false;  // quantities multiplied by tau^2, tau may touch 0
};

template <class T>
struct e_parts {
  interval<T> tails;
  interval<T> remainders;
  interval<T> w;
  interval<T> coef;  // (x^tau / tau)(1/tau - log x), times tau^2 when scaled
  interval<T> total() const { return tails + remainders + w; }
};

template <class T>
e_parts<T> error_parts(const cell_inputs<T>& in, T x, const e_options& opt) {
  using I = interval<T>;
  const I one(1), tau = in.tau, X(x), lx = log(X), a = one - tau;
  const I xt = exp(tau * lx), xtm1 = xt / X;
  const I& C1 = in.c1;
  const I& C2 = in.c2;
  const I P = in.pv.prefix, G = in.pv.general;
  I K1, K2, Hx, coef, Hstar, mult;
  bool tstar_beyond = false;
  if (!in.scaled) {
    const I it = one / tau;
    if ((it - lx).lo() < 0) throw domain_error("side condition 1/tau >= log x fails on the cell");
    K1 = it - C1;
    K2 = C2 + sqr(it);
    Hx = xtm1 * (it * (it - lx) + C2 + C1 * lx);
    coef = xt * it * (it - lx);
    const I lts = K2 / K1 + one / a;
    tstar_beyond = lts.hi() <= lx.lo();
    Hstar = K1 * exp(-a * lts) / a;
    mult = one;
  } else {
    const I om = one - tau * C1;
    if (om.lo() <= 0 || (one - tau * lx).lo() < 0) throw domain_error("scaled evaluation out of range");
    K1 = tau * om;
    K2 = one + sqr(tau) * C2;
    Hx = xtm1 * ((one - tau * lx) + sqr(tau) * (C2 + C1 * lx));
    coef = xt * (one - tau * lx);
    const T lts_lo = (K2.lo() / detail::up(tau.hi() * om.hi())) + 1;
    const I e = exp(I(-a.lo() * lts_lo));
    Hstar = K1 * I(0, e.hi()) / a;
    mult = sqr(tau);
  }
  e_parts<T> out;
  out.coef = coef;
  if (opt.model == e_model::sound) {
    const I tv = tstar_beyond ? abs(Hx) : abs(Hx) + I(2) * abs(Hstar);
    const I tailH = P * (abs(Hx) + tv);
    const I tail3 = coef * tail_bound_prefix(h_kind::inverse, tau, x, P);
    out.tails = tailH + tail3;
    out.remainders = mult * err_bound(x, tau, G);
    out.w = mult * w_sound(x, tau);
    out.tails = out.tails * I(opt.mut.tail);
    out.w = out.w * I(opt.mut.w);
  } else {
    const I t1 = abs(K1) * tail_bound_prefix(h_kind::log_over_power, tau, x, P);
    const I t2 = abs(K2) * tail_bound_prefix(h_kind::inverse_power, tau, x, P);
    const I t3 = coef * tail_bound_prefix(h_kind::inverse, tau, x, P);
    out.tails = t1 + t2 + t3;
    const I S0 = I(std::min(P.hi(), x));
    const I r1 = a / I(12) * xtm1 / X * I(2) * P * X * lx;
    const I r2 = xtm1 * lx * S0 / I(2);
    out.remainders = mult * (r1 + r2);
    // w_term requires tau > 0; its tau -> 0 limit is an upper bound for small tau
    const I tw = in.scaled ? I(std::max(tau.lo(), T(1e-300)), tau.hi()) : tau;
    out.w = mult * w_term(x, tw, x);
    out.tails = out.tails * I(opt.mut.tail);
    out.w = out.w * I(opt.mut.w);
  }
  return out;
}

template <class T>
interval<T> eagle_term(const interval<T>& tau, T x, eagle_form form) {
  using I = interval<T>;
  const I al = I(2) * tau - I(1);
  if (form == eagle_form::lemma) return tail_f(al, x);
  const I X(x), lx = log(X), h = I(0.5) - tau;
  return I(2) * (I(1) + h * lx) / (exp(h * lx) * sqr(I(1) - I(2) * tau));
}

struct f_options {
  e_options e;
  eagle_form eagle = eagle_form::lemma;
  zeta_options zeta{};
};

template <class T>
struct f_result {
  interval<T> f;
  e_parts<T> e;
  interval<T> lower_term;  // coef * B / sqrt(q)
  interval<T> zeta_term;   // 2 zeta'(2 - 2 tau)
  interval<T> eagle;
};

template <class T>
f_result<T> f_parts(const cell_inputs<T>& in, T x, const interval<T>& B, const f_options& opt,
                    const interval<T>* zeta_cache = nullptr) {
  using I = interval<T>;
  if (!(x > 4)) throw domain_error("F needs x > 4");
  f_result<T> r;
  r.e = error_parts(in, x, opt.e);
  const I mult = in.scaled ? sqr(in.tau) : I(1);
  r.lower_term = r.e.coef * B * I(opt.e.mut.b) / sqrt(in.q);
  r.zeta_term = zeta_cache ? *zeta_cache : I(2) * zeta_deriv(1, I(2) - I(2) * in.tau, opt.zeta);
  r.eagle = eagle_term(in.tau, x, opt.eagle);
  r.f = r.e.total() - r.lower_term + mult * (r.zeta_term + r.eagle);
  return r;
}

template <class T>
cell_inputs<T> make_cell(const interval<T>& q, const interval<T>& tau, parity par, double q0, const e_options& opt,
                         bool scaled = false) {
  using I = interval<T>;
  if (!scaled) detail::check_tau(tau);
  cell_inputs<T> in;
  in.q = q;
  in.tau = tau;
  in.scaled = scaled;
  auto c = c12_constants(I(1) - tau, opt.bernoulli_cutoff, true);
  in.c1 = c.first * I(opt.mut.c1);
  in.c2 = c.second;
  in.pv = make_pv_bounds<T>(par, q, q0, opt.pomerance);
  return in;
}

// E(q, tau, x) over a cell
template <class T>
interval<T> error_E(const interval<T>& q_cell, const interval<T>& tau_cell, T x, parity par, double q0,
                    const e_options& opt = {}) {
  auto in = make_cell(q_cell, tau_cell, par, q0, opt);
  return error_parts(in, x, opt).total();
}

}  // namespace pagecert
