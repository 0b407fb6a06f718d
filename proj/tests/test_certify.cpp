#include <gtest/gtest.h>

#include <pagecert/certify.hpp>

using namespace pagecert;

namespace {

candidate_config config(double lo, double hi, parity p, double c, double lx) {
  candidate_config cfg;
  cfg.range = modulus_range(lo, hi, p, p == parity::odd && lo < odd_start);
  cfg.c = c;
  cfg.log10_x = lx;
  return cfg;
}

}  // namespace

TEST(Certify, MidTableRowCertifies) {
  const auto cert = certify(config(4.4e9, 6.4e10, parity::even, 1.070, 9.01));
  EXPECT_EQ(cert.status, cert_status::certified) << cert.note;
  EXPECT_TRUE(cert.dominance);
  EXPECT_GT(cert.leaves, 0);
  EXPECT_LT(cert.worst.f.hi(), 0.0);
  EXPECT_FALSE(cert.config_x_clipped);
}

TEST(Certify, OddRowCertifies) {
  const auto cert = certify(config(1.5e8, 6.2e8, parity::odd, 1.021, 8.00));
  EXPECT_EQ(cert.status, cert_status::certified) << cert.note;
}

// the sound error bound is too weak at the first even row's corner
TEST(Certify, FirstRowFailsAtCorner) {
  const auto cert = certify(config(4e5, 7e5, parity::even, 1.011, 5.54));
  EXPECT_EQ(cert.status, cert_status::failed);
  EXPECT_GE(cert.worst.f.lo(), 0.0);
  EXPECT_EQ(cert.worst.q.lo(), cert.worst.q.hi());
}

TEST(Certify, LargeCFails) {
  const auto cert = certify(config(4.4e9, 6.4e10, parity::even, 1.270, 7.5));
  EXPECT_NE(cert.status, cert_status::certified);
}

TEST(Certify, TauRangeTooLarge) {
  auto cfg = config(4e5, 7e5, parity::even, 7.0, 2.0);
  EXPECT_EQ(certify(cfg).status, cert_status::failed);
}

TEST(Certify, Deterministic) {
  const auto cfg = config(6.2e8, 4.4e9, parity::odd, 1.029, 8.54);
  const auto a = certify(cfg), b = certify(cfg);
  EXPECT_EQ(a.status, b.status);
  EXPECT_EQ(a.cells_examined, b.cells_examined);
  EXPECT_EQ(a.leaves, b.leaves);
  EXPECT_EQ(a.worst.f.hi(), b.worst.f.hi());
}

TEST(Certify, ScheduleIndependent) {
  auto cfg = config(4.4e9, 6.4e10, parity::even, 1.070, 9.01);
  const auto ref = certify(cfg);
  for (unsigned seed : {1u, 17u, 99u}) {
    cfg.shuffle_seed = seed;
    EXPECT_EQ(certify(cfg).status, ref.status) << seed;
  }
}

TEST(Certify, DoublePrecisionOnly) {
  auto cfg = config(4.4e9, 6.4e10, parity::even, 1.070, 9.01);
  cfg.long_double_escalation = false;
  const auto cert = certify(cfg);
  EXPECT_NE(cert.status, cert_status::failed);
  EXPECT_EQ(cert.escalations, 0);
}

TEST(Certify, BadConfig) {
  auto cfg = config(4e5, 7e5, parity::even, 1.011, 5.54);
  cfg.c = 0;
  EXPECT_THROW(certify(cfg), domain_error);
  cfg = config(4e5, 7e5, parity::even, 1.011, 5.54);
  cfg.x_floor = 2;
  EXPECT_THROW(certify(cfg), domain_error);
  cfg = config(4e5, 7e5, parity::even, 1.011, 5.54);
  cfg.range.q_lo = 1e5;
  EXPECT_THROW(certify(cfg), domain_error);
}

TEST(Certify, CellBudget) {
  auto cfg = config(4.4e9, 6.4e10, parity::even, 1.070, 9.01);
  cfg.cell_budget = 3;
  const auto cert = certify(cfg);
  EXPECT_EQ(cert.status, cert_status::inconclusive);
}

TEST(FValue, SingleCell) {
  const auto cfg = config(4.4e9, 6.4e10, parity::even, 1.070, 9.01);
  // negative near the top of the tau range at the configured x
  EXPECT_LT(f_value(ival(4.4e9, 4.5e9), ival(0.044, 0.045), cfg).hi(), 0.0);
  // small tau needs a smaller x than the configured one
  EXPECT_GT(f_value(ival(4.4e9, 4.5e9), ival(0.0099, 0.01), cfg).lo(), 0.0);
  // the corner of a failing row is nonnegative
  const auto bad = config(4e5, 7e5, parity::even, 1.011, 5.54);
  const double tmax = 1.011 / std::log(4e5);
  EXPECT_GE(f_value(ival(4e5), ival(tmax), bad).lo(), 0.0);
}
