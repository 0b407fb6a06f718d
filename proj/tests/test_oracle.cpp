#include <gtest/gtest.h>

#include <pagecert/selfcheck.hpp>

using namespace pagecert;
using namespace pagecert::oracle;

TEST(Kronecker, Examples) {
  EXPECT_EQ(kronecker(-4, 3), -1);
  EXPECT_EQ(kronecker(-4, 5), 1);
  EXPECT_EQ(kronecker(-4, 2), 0);
  EXPECT_EQ(kronecker(5, 2), -1);
  EXPECT_EQ(kronecker(5, 4), 1);
  EXPECT_EQ(kronecker(8, 3), -1);
  EXPECT_EQ(kronecker(8, 7), 1);
  EXPECT_EQ(kronecker(-3, 2), -1);
  EXPECT_EQ(kronecker(12, 5), -1);
  EXPECT_EQ(kronecker(5, 0), 0);
  EXPECT_EQ(kronecker(1, 0), 1);
}

TEST(Kronecker, MultiplicativeAndPeriodic) {
  for (long d : fundamental_discriminants(3, 200, 60)) {
    const long q = std::labs(d);
    for (long m = 1; m < 40; ++m)
      for (long n = 1; n < 40; ++n) ASSERT_EQ(kronecker(d, m * n), kronecker(d, m) * kronecker(d, n)) << d;
    for (long n = 1; n < 3 * q; ++n) ASSERT_EQ(kronecker(d, n), kronecker(d, n + q)) << d;
    // the sign of the discriminant decides chi(-1)
    EXPECT_EQ(kronecker(d, q - 1), d > 0 ? 1 : -1) << d;
  }
}

TEST(Discriminants, FirstValues) {
  const std::vector<long> want{-3, -4, 5, -7, 8, -8, -11, 12, 13, -15, 17, -19, -20, 21, -23, 24, -24, 28, 29, -31};
  EXPECT_EQ(fundamental_discriminants(1, 100, 20), want);
  EXPECT_FALSE(is_fundamental(9));
  EXPECT_FALSE(is_fundamental(-16));
  EXPECT_THROW(real_character(9), domain_error);
}

TEST(Character, Partials) {
  const real_character chi(5);
  EXPECT_EQ(chi.modulus(), 5);
  EXPECT_EQ(chi.par(), parity::even);
  EXPECT_EQ(real_character(-4).par(), parity::odd);
  // 1, -1, -1, 1, 0: prefix sums 1, 0, -1, 0, 0
  EXPECT_EQ(chi.max_prefix(), 1);
  EXPECT_EQ(chi.max_interval(), 2);
  EXPECT_EQ(chi(-1), 1);
}

TEST(GValues, Examples) {
  const real_character chi(-4);
  EXPECT_EQ(g_value(chi, 1), 1);
  EXPECT_EQ(g_value(chi, 3), 0);
  EXPECT_EQ(g_value(chi, 5), 2);
  EXPECT_EQ(g_value(chi, 9), 1);
  EXPECT_EQ(g_value(chi, 25), 3);
  EXPECT_EQ(g_value(chi, 2), 1);
  const auto tab = g_table(chi, 200);
  for (long n = 1; n <= 200; ++n) EXPECT_EQ(tab[n], g_value(chi, n)) << n;
  EXPECT_THROW(g_value(chi, 0), domain_error);
}

TEST(GValues, NonnegativeAndSquares) {
  for (long d : {5L, -3L, 13L, -23L}) {
    const real_character chi(d);
    const auto g = g_table(chi, 20000);
    for (long n = 1; n <= 20000; ++n) ASSERT_GE(g[n], 0);
    for (long m = 1; m * m <= 20000; ++m) ASSERT_GE(g[m * m], 1);
  }
}

TEST(DirectSum, SmallX) {
  const real_character chi(-4);
  EXPECT_EQ(direct_weighted_sum(chi, 1, real("0.1")), 0);
  // only n = 2 contributes below 4
  const real tau("0.1");
  const real want = log(real(2)) * exp((tau - 1) * log(real(2)));
  EXPECT_LT(abs(direct_weighted_sum(chi, 3, tau) - want), real("1e-45"));
  const auto many = direct_weighted_sums(chi, {3, 100, 50}, tau);
  EXPECT_LT(abs(many[0] - want), real("1e-45"));
  EXPECT_LT(abs(many[1] - direct_weighted_sum(chi, 100, tau)), real("1e-40"));
  EXPECT_LT(abs(many[2] - direct_weighted_sum(chi, 50, tau)), real("1e-40"));
}

TEST(DirectSum, ResourceGuard) {
  const real_character chi(5);
  EXPECT_THROW(direct_weighted_sum(chi, direct_sum_limit + 1, real("0.1")), resource_error);
  EXPECT_THROW(direct_L(chi, 1, direct_sum_limit + 1), resource_error);
  EXPECT_THROW(direct_L(chi, 1, 3), domain_error);
}

TEST(DirectL, KnownValues) {
  EXPECT_TRUE(direct_L(real_character(-4), 1, 200000).contains(0.7853981633974483));
  EXPECT_TRUE(direct_L(real_character(5), 1, 200000).contains(0.43040894096400403));
  // L(1, chi_-3) = pi / (3 sqrt 3)
  EXPECT_TRUE(direct_L(real_character(-3), 1, 200000).contains(0.6045997880780726));
}

TEST(Cello, Examples) {
  for (long d : cello_discriminants())
    for (long x : {16L, 1000L}) {
      const auto r = check_cello_report(real_character(d), x, 0.05);
      EXPECT_TRUE(r.ok()) << d << " " << x;
      EXPECT_GT(r.w, 0.0);
      EXPECT_GE(r.e, r.w);
    }
  EXPECT_THROW(check_cello(real_character(5), 10, 0.05), domain_error);
  EXPECT_THROW(check_cello(real_character(5), 100, 0.5), domain_error);
}

TEST(Cello, ShrunkBoundFails) {
  // with the error bound removed the lhs no longer sits inside
  const auto r = check_cello_report(real_character(5), 1000, 0.05, {1, 0});
  EXPECT_TRUE(r.identity_ok);
  const auto none = check_cello_report(real_character(5), 1000, 0.05, {0, 0});
  EXPECT_FALSE(none.ok());
}

TEST(LowerBound, Grid) {
  const auto s = check_lower_bound_grid();
  EXPECT_TRUE(s.ok()) << s.passed << "/" << s.total;
}

TEST(Suites, PowerSums) {
  const auto s = check_power_sums();
  EXPECT_EQ(s.total, 12);
  EXPECT_TRUE(s.ok());
}

TEST(Suites, CelloGrid) {
  const auto s = check_cello_grid();
  EXPECT_EQ(s.total, 24);
  EXPECT_TRUE(s.ok());
}

TEST(Suites, GValues) {
  const auto s = check_g_values(20000, 141, 8);
  EXPECT_TRUE(s.ok());
}
