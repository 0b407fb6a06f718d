#include <gtest/gtest.h>

#include <pagecert/criterion.hpp>
#include <pagecert/oracle.hpp>

using namespace pagecert;
using oracle::real;

namespace {

bool holds(const ival& e, const real& v) { return real(e.lo()) <= v && v <= real(e.hi()); }

cell_inputs<double> row1_cell(const e_options& opt = {}) {
  return make_cell(ival(4e5, 5e5), ival(0.07, 0.071), parity::even, 4e5, opt);
}

}  // namespace

// K1 = -zeta(1 - tau), K2 = -zeta'(1 - tau)
TEST(KCoefficients, AgainstZeta) {
  for (const char* t : {"0.05", "0.1", "0.2", "0.4"}) {
    const auto k = k_coefficients(make_enclosure<double>(t));
    const real a = 1 - real(t);
    EXPECT_TRUE(holds(k.k1, -oracle::zeta(a))) << t;
    EXPECT_TRUE(holds(k.k2, -oracle::zeta_prime(a))) << t;
  }
  EXPECT_THROW(k_coefficients(ival(0.5)), domain_error);
  EXPECT_THROW(k_coefficients(ival(0, 0.1)), domain_error);
}

TEST(WSound, PositiveAndGrowing) {
  double prev = 0;
  for (double x = 16; x < 1e9; x *= 3.1) {
    const ival w = w_sound(x, ival(0.05));
    EXPECT_GT(w.lo(), prev);
    prev = w.hi();
  }
  EXPECT_THROW(w_sound(0.5, ival(0.05)), domain_error);
}

TEST(WSound, BoundedByPrintedShape) {
  // both are O(x^tau log x)
  for (double x : {1e3, 1e5, 1e7}) {
    const ival w = w_sound(x, ival(0.05));
    const double scale = std::pow(x, 0.05) * std::log(x);
    EXPECT_LT(w.hi() / scale, 0.05);
  }
}

TEST(WTerm, Requirements) {
  EXPECT_GT(w_term(1e5, ival(0.05), 1e5).lo(), 0.0);
  EXPECT_THROW(w_term(1e5, ival(0.05), 2.0), domain_error);
  EXPECT_THROW(w_term(10.0, ival(0.05), 100.0), domain_error);
}

TEST(ErrBound, MonotoneInG) {
  double prev = 0;
  for (double g : {10.0, 100.0, 1000.0, 1e4}) {
    const ival e = err_bound(1e6, ival(0.05), ival(g));
    EXPECT_GE(e.lo(), prev);
    prev = e.hi();
  }
  // trivial split when G is huge
  EXPECT_GT(err_bound(1e3, ival(0.05), ival(1e12)).lo(), 0.0);
  EXPECT_THROW(err_bound(0.5, ival(0.05), ival(10)), domain_error);
}

// the error bound covers the oracle's |lhs - main| on real characters
TEST(ErrBound, CoversOracleDecomposition) {
  for (long d : {5L, -4L, 13L, -23L})
    for (long x : {100L, 2000L}) {
      const auto r = oracle::check_cello_report(oracle::real_character(d), x, 0.05);
      EXPECT_TRUE(r.identity_ok) << d << " " << x;
      EXPECT_TRUE(r.bound_ok) << d << " " << x;
    }
}

TEST(ErrorParts, TotalIsSum) {
  const auto in = row1_cell();
  const auto p = error_parts(in, 1e5, e_options{});
  const ival t = p.total();
  EXPECT_TRUE(t.contains(p.tails.mid() + p.remainders.mid() + p.w.mid()));
  EXPECT_GT(p.tails.lo(), 0.0);
  EXPECT_GT(p.remainders.lo(), 0.0);
  EXPECT_TRUE(error_E(in.q, in.tau, 1e5, parity::even, 4e5).overlaps(t));
}

TEST(ErrorParts, SideConditionEnforced) {
  const auto in = row1_cell();
  // 1/tau ~ 14.1 < log 1e7
  EXPECT_THROW(error_parts(in, 1e7, e_options{}), domain_error);
}

TEST(ErrorParts, MutationsScale) {
  e_options m;
  m.mut.w = 1.1;
  m.mut.tail = 0.9;
  const auto base = error_parts(row1_cell(), 1e5, e_options{});
  const auto mut = error_parts(row1_cell(), 1e5, m);
  EXPECT_NEAR(mut.w.mid(), 1.1 * base.w.mid(), 1e-9 * base.w.mid());
  EXPECT_NEAR(mut.tails.mid(), 0.9 * base.tails.mid(), 1e-9 * base.tails.mid());
  EXPECT_FALSE(e_options{}.mut.active());
  EXPECT_TRUE(m.mut.active());
}

TEST(ErrorParts, PomeranceShrinksTails) {
  e_options pom;
  pom.pomerance = true;
  const auto a = error_parts(row1_cell(), 1e5, e_options{});
  const auto b = error_parts(row1_cell(pom), 1e5, pom);
  EXPECT_LT(b.tails.hi(), a.tails.hi());
}

TEST(ErrorParts, PrintedModel) {
  e_options pr;
  pr.model = e_model::printed;
  const auto p = error_parts(row1_cell(pr), 1e5, pr);
  EXPECT_GT(p.total().lo(), 0.0);
}

TEST(FParts, Assembly) {
  const auto in = row1_cell();
  const ival B(79.2);
  const auto r = f_parts(in, 1e5, B, f_options{});
  const ival again = r.e.total() - r.lower_term + r.zeta_term + r.eagle;
  EXPECT_TRUE(r.f.overlaps(again));
  EXPECT_GT(r.lower_term.lo(), 0.0);
  f_options bm;
  bm.e.mut.b = 1.1;
  const auto rb = f_parts(in, 1e5, B, bm);
  EXPECT_NEAR(rb.lower_term.mid(), 1.1 * r.lower_term.mid(), 1e-9 * r.lower_term.mid());
  EXPECT_THROW(f_parts(in, 3.0, B, f_options{}), domain_error);
}

TEST(FParts, EagleForms) {
  const ival tau(0.05);
  EXPECT_GT(eagle_term(tau, 1e5, eagle_form::lemma).lo(), 0.0);
  EXPECT_GT(eagle_term(tau, 1e5, eagle_form::oliver).lo(), 0.0);
}

TEST(MakeCell, C1Mutation) {
  e_options m;
  m.mut.c1 = 0.9;
  const auto a = row1_cell(), b = row1_cell(m);
  EXPECT_NEAR(b.c1.mid(), 0.9 * a.c1.mid(), 1e-9);
  EXPECT_TRUE(b.c2.overlaps(a.c2));
}
