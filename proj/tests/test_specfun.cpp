#include <gtest/gtest.h>

#include <boost/math/quadrature/exp_sinh.hpp>

#include <pagecert/oracle.hpp>
#include <pagecert/specfun.hpp>

using namespace pagecert;
using oracle::real;

namespace {

bool holds(const ival& e, const real& v) { return real(e.lo()) <= v && v <= real(e.hi()); }

}  // namespace

TEST(ThetaTerm, Enclosure) {
  const theta_term<double> t(ival(1, 2), ival(0.5));
  EXPECT_LE(t.as_enclosure().lo(), 0.5);
  EXPECT_GE(t.as_enclosure().hi(), 2.5);
  EXPECT_THROW(theta_term<double>(ival(1), ival(-1, 1)), domain_error);
}

TEST(Bernoulli3, Values) {
  const ival z = bernoulli3_fractional(ival(0));
  EXPECT_TRUE(z.contains(0.0));
  EXPECT_LT(z.mag(), 1e-15);
  const ival h = bernoulli3_fractional(ival(0.5));
  EXPECT_LT(h.mag(), 1e-15);
  EXPECT_TRUE(bernoulli3_fractional(ival(7.5)).contains(0.0));
}

TEST(Bernoulli3, Supremum) {
  // maximum sqrt(3)/36 at (3 - sqrt 3)/6
  const real s3 = sqrt(real(3));
  const real tmax = (3 - s3) / 6;
  const real bmax = tmax * tmax * tmax - real(1.5) * tmax * tmax + tmax / 2;
  EXPECT_LT(abs(bmax - s3 / 36), real("1e-45"));
  const ival whole = bernoulli3_fractional(ival(0, 1));
  EXPECT_TRUE(holds(whole, s3 / 36));
  EXPECT_TRUE(holds(whole, -s3 / 36));
  EXPECT_LE(whole.hi(), static_cast<double>(s3 / 36) * (1 + 1e-15));
  // 1/3! of the bound is 1/(72 sqrt 3)
  EXPECT_LT(abs(s3 / 36 / 6 - 1 / (72 * s3)), real("1e-45"));
}

TEST(Bernoulli3, NeverExceedsBound) {
  const double M = std::sqrt(3.0) / 36 * (1 + 1e-12);
  for (int i = 0; i < 5000; ++i) {
    const double a = i * 0.0137, b = a + (i % 7) * 0.01;
    const ival r = bernoulli3_fractional(ival(a, b));
    EXPECT_LE(r.mag(), M);
    for (double t : {a, b, 0.5 * (a + b)}) {
      const real tt(t - std::floor(t));
      EXPECT_TRUE(holds(r, tt * tt * tt - real(1.5) * tt * tt + tt / 2)) << t;
    }
  }
  EXPECT_THROW(bernoulli3_fractional(ival(-0.5, 0.5)), domain_error);
}

TEST(Zeta, Values) {
  const ival d2 = zeta_deriv(1, ival(2));
  EXPECT_TRUE(d2.contains(-0.9375482543158437));
  EXPECT_LE(d2.width(), 1e-9);
  const ival z2 = zeta_deriv(0, ival(2));
  const real basel = boost::math::constants::pi<real>() * boost::math::constants::pi<real>() / 6;
  EXPECT_TRUE(holds(z2, basel));
  const ival d50 = zeta_deriv(1, ival(50));
  EXPECT_GT(d50.lo(), -1e-14);
  EXPECT_LT(d50.hi(), 0.0);
}

TEST(Zeta, AgainstOracle) {
  for (const char* s : {"1.1", "1.5", "1.9", "2.5", "3"}) {
    const ival S = make_enclosure<double>(s);
    EXPECT_TRUE(holds(zeta_deriv(0, S), oracle::zeta(real(s)))) << s;
    EXPECT_TRUE(holds(zeta_deriv(1, S), oracle::zeta_prime(real(s)))) << s;
  }
  // a wide argument encloses its whole image
  const ival w = zeta_deriv(1, ival(1.8, 1.9));
  EXPECT_TRUE(holds(w, oracle::zeta_prime(real("1.8"))));
  EXPECT_TRUE(holds(w, oracle::zeta_prime(real("1.9"))));
}

TEST(Zeta, PoleProximity) {
  EXPECT_THROW(zeta_deriv(1, ival(1.01)), pole_error);
  EXPECT_THROW(zeta_deriv(0, ival(1.04, 2)), pole_error);
  zeta_options near;
  near.margin = 0.005;
  EXPECT_NO_THROW(zeta_deriv(0, ival(1.01), near));
}

TEST(Constants, C1) {
  EXPECT_NEAR(c1_constant(ival(0.5)).mid(), 0.5396454912, 1e-10);
  // alpha -> 0
  EXPECT_NEAR(c1_constant(ival(1e-9)).mid(), 0.5, 1e-8);
  for (const char* a : {"0.1", "0.5", "0.9"}) {
    const real A(a);
    const ival c = c1_constant(make_enclosure<double>(a));
    EXPECT_TRUE(holds(c, oracle::zeta(A) + 1 / (1 - A))) << a;
    EXPECT_LE(c.width(), 1e-6);
  }
  EXPECT_THROW(c1_constant(ival(0)), domain_error);
  EXPECT_THROW(c1_constant(ival(0.5, 1)), domain_error);
}

TEST(Constants, C2) {
  EXPECT_NEAR(c2_constant(ival(0.5)).mid(), -0.0773539, 1e-7);
  for (const char* a : {"0.1", "0.5", "0.9"}) {
    const real A(a);
    const ival c = c2_constant(make_enclosure<double>(a));
    EXPECT_TRUE(holds(c, -oracle::zeta_prime(A) - 1 / ((1 - A) * (1 - A)))) << a;
  }
  double prev = 1;
  for (long n : {2L, 8L, 64L, 1000L}) {
    const double w = c2_constant(ival(0.3), n).width();
    EXPECT_LE(w, prev);
    prev = w;
  }
  EXPECT_THROW(c2_constant(ival(1.5)), domain_error);
}

TEST(Constants, SharedEvaluationMatches) {
  const auto [c1, c2] = c12_constants(ival(0.4, 0.41), 500);
  EXPECT_TRUE(c1.overlaps(c1_constant(ival(0.4, 0.41), 500)));
  EXPECT_TRUE(c2.overlaps(c2_constant(ival(0.4, 0.41), 500)));
  EXPECT_NO_THROW(c12_constants(ival(0.9, 1), 32, true));
  EXPECT_THROW(c12_constants(ival(0.9, 1), 32, false), domain_error);
}

TEST(PowerSums, Examples) {
  EXPECT_TRUE(power_sum(1.0, ival(0.5)).contains(1.0));
  EXPECT_NEAR(power_sum(100.0, ival(0.5)).mid(), 18.5896, 1e-4);
  EXPECT_TRUE(log_power_sum(1.0, ival(0.5)).contains(0.0));
  EXPECT_THROW(power_sum(0.5, ival(0.5)), domain_error);
  EXPECT_THROW(log_power_sum(0.0, ival(0.5)), domain_error);
}

TEST(PowerSums, ContainDirectSums) {
  const std::vector<long> xs{1, 2, 10, 100, 1000, 100000};
  for (const char* a : {"0.1", "0.3", "0.5", "0.9"}) {
    const ival A = make_enclosure<double>(a);
    for (long x : xs) {
      const double xd = static_cast<double>(x);
      EXPECT_TRUE(holds(power_sum(xd, A), oracle::power_sum(x, real(a)))) << a << " " << x;
      EXPECT_TRUE(holds(log_power_sum(xd, A), oracle::log_power_sum(x, real(a)))) << a << " " << x;
    }
  }
  // non-integer x sums to floor(x)
  EXPECT_TRUE(holds(power_sum(100.7, ival(0.5)), oracle::power_sum(100, real("0.5"))));
}

TEST(PowerSums, Million) {
  const long x = 1000000;
  EXPECT_TRUE(holds(power_sum(1e6, ival(0.5)), oracle::power_sum(x, real("0.5"))));
}

TEST(TailF, Values) {
  // sqrt(x) - 1 = e, alpha = -1: 4/e
  const double x = (std::exp(1.0) + 1) * (std::exp(1.0) + 1);
  EXPECT_NEAR(tail_f(ival(-1), x).mid(), 4 / std::exp(1.0), 1e-12);
  EXPECT_GT(tail_f(ival(-0.9), 1e4).lo(), tail_f(ival(-0.9), 1e6).hi());
  EXPECT_THROW(tail_f(ival(-0.5), 4.0), domain_error);
  EXPECT_THROW(tail_f(ival(-0.1, 0.1), 100.0), domain_error);
}

TEST(TailF, AgainstQuadrature) {
  // 2 int_999^inf log t t^{alpha - 1} dt, alpha = 2 tau - 1, tau = 0.05
  const real alpha("-0.9");
  boost::math::quadrature::exp_sinh<real> integrator;
  const real I = integrator.integrate([&](real t) { return log(t + 999) * exp((alpha - 1) * log(t + 999)); },
                                      real("1e-40"));
  const ival f = tail_f(ival(2) * make_enclosure<double>("0.05") - ival(1), 1e6);
  EXPECT_TRUE(holds(f, 2 * I));
}
