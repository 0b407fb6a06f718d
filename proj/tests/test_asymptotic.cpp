#include <gtest/gtest.h>

#include <pagecert/asymptotic.hpp>

using namespace pagecert;

TEST(Calypso, Examples) {
  EXPECT_FALSE(calypso_holds(1.011, ival(1e20)));
  EXPECT_TRUE(calypso_holds(1.011, ival(1e21)));
  EXPECT_TRUE(calypso_holds(1.0, ival(1e25)));
  EXPECT_THROW(calypso_holds(1.0, ival(1)), domain_error);
}

// below the calypso threshold tau = c / log q exceeds (log 4) / (24 e)
TEST(Calypso, TauBound) {
  for (double c : {0.9, 1.011, 1.3})
    for (double q = 1e10; q < 1e40; q *= 7.3)
      if (calypso_holds(c, ival(q))) EXPECT_LT(c / std::log(q), std::log(4.0) / (24 * std::exp(1.0)));
}

TEST(Calypso, ThresholdClosedForm) {
  // log q = 24 e c / log 4
  const double c = 1.011;
  const double q = std::exp(24 * std::exp(1.0) * c / std::log(4.0));
  const auto r = solve_threshold(c, parity::even);
  EXPECT_TRUE(r.calypso_threshold.contains(q));
  EXPECT_NEAR(r.calypso_threshold.mid(), 4.5987e20, 1e16);
  EXPECT_LT(r.calypso_threshold.width(), 1e-10 * r.calypso_threshold.mid());
}

TEST(Cheeseburger, RequiresCalypso) {
  EXPECT_THROW(cheeseburger_value(1.011, ival(1e20), parity::even), domain_error);
  EXPECT_NO_THROW(cheeseburger_value(1.011, ival(1e25), parity::even));
}

TEST(Cheeseburger, IncreasingInQ) {
  for (parity p : {parity::even, parity::odd}) {
    double prev = -INFINITY;
    for (double q = 1e21; q < 1e40; q *= 4.1) {
      const ival v = cheeseburger_value(1.011, ival(q), p);
      EXPECT_GT(v.lo(), prev);
      prev = v.hi();
    }
  }
}

TEST(Thresholds, AsymptoticQ0) {
  const auto e = solve_threshold(1.011, parity::even, asymptotic_q0);
  const auto o = solve_threshold(1.011, parity::odd, asymptotic_q0);
  EXPECT_NEAR(e.combined_threshold.mid() / 2.809e32, 1, 1e-3);
  EXPECT_NEAR(o.combined_threshold.mid() / 1.0207e33, 1, 1e-3);
  EXPECT_TRUE(e.combined_threshold.subset_of(e.cheeseburger_threshold));
  // sign change inside the bracket
  EXPECT_FALSE(strictly_positive(cheeseburger_value(1.011, ival(e.combined_threshold.lo() * 0.999), parity::even)));
  EXPECT_TRUE(strictly_positive(cheeseburger_value(1.011, ival(e.combined_threshold.hi() * 1.001), parity::even)));
}

TEST(Thresholds, TableEndQ0) {
  const auto e = solve_threshold(1.011, parity::even, table_end_q0);
  const auto o = solve_threshold(1.011, parity::odd, table_end_q0);
  EXPECT_NEAR(e.combined_threshold.mid() / 2.550e32, 1, 1e-3);
  EXPECT_NEAR(o.combined_threshold.mid() / 9.052e32, 1, 1e-3);
  // consistent: the threshold lies below the q0 used for A
  EXPECT_LT(o.combined_threshold.hi(), table_end_q0);
}

TEST(Thresholds, MonotoneInC) {
  double prev = 0;
  for (double c : {0.95, 1.0, 1.011, 1.05}) {
    const auto r = solve_threshold(c, parity::odd);
    EXPECT_GT(r.combined_threshold.lo(), prev);
    prev = r.combined_threshold.hi();
  }
}

TEST(Thresholds, NoSolution) {
  EXPECT_THROW(solve_threshold(1.2, parity::even), solver_error);
  EXPECT_THROW(solve_threshold(1.1, parity::odd), solver_error);
  EXPECT_THROW(solve_threshold(0, parity::even), domain_error);
  EXPECT_THROW(solve_threshold(2.5, parity::even), domain_error);
}

TEST(Coverage, PublishedTable) {
  const auto t = published_table();
  const auto e = solve_threshold(1.011, parity::even, table_end_q0);
  const auto o = solve_threshold(1.011, parity::odd, table_end_q0);
  const auto cov = theorem_coverage(t, e, o);
  EXPECT_TRUE(cov.covered) << cov.reason;
}

TEST(Coverage, Failures) {
  const auto t = published_table();
  const auto e = solve_threshold(1.011, parity::even, table_end_q0);
  const auto o = solve_threshold(1.011, parity::odd, table_end_q0);

  std::vector<table_row> shortened(t.begin(), t.end() - 1);
  EXPECT_FALSE(theorem_coverage(shortened, e, o).covered);

  auto low = t;
  low[5].even->c = 1.0;
  EXPECT_FALSE(theorem_coverage(low, e, o).covered);

  auto holes = t;
  holes[15].odd.reset();
  EXPECT_FALSE(theorem_coverage(holes, e, o).covered);

  auto gap = t;
  gap.erase(gap.begin() + 2);
  EXPECT_FALSE(theorem_coverage(gap, e, o).covered);

  std::vector<table_row> late(t.begin() + 1, t.end());
  EXPECT_FALSE(theorem_coverage(late, e, o).covered);
}

TEST(ToJson, Report) {
  const auto j = to_json(solve_threshold(1.011, parity::odd));
  EXPECT_EQ(j["parity"], "odd");
  EXPECT_EQ(j["combined_threshold"].size(), 2u);
}
