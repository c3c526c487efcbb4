#include <zetalab/identities.hpp>

#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "support/mhs_oracle.hpp"

namespace zetalab {
namespace {

TEST(Identities, Id2AtOneIsTwoOverOneMinusA) {
  auto s = identities::id2(1, Var::a);
  EXPECT_EQ(s.lhs.reduce(), parse_expr("2/(1-a)"));
  EXPECT_TRUE(check_identity("ID2", 1).pass);
}

TEST(Identities, Id0AtTwo) {
  // (3/2)(C(2,1)/1 + C(4,2)/2) against C(3,1)/1 + C(4,2)/2 + H_2(1).
  Rational lhs = make_rational(3, 2) * (2 + Rational(6, 2));
  Rational rhs = 3 + Rational(6, 2) + testing::brute_mhs(2, {1});
  EXPECT_EQ(lhs, make_rational(15, 2));
  EXPECT_EQ(rhs, make_rational(15, 2));
  EXPECT_TRUE(check_identity("Id0", 2).pass);
}

TEST(Identities, RowSumAtTwo) {
  EXPECT_EQ(Rational(binomial(3, 1) + binomial(4, 2)), Rational(9));
  EXPECT_EQ(Rational(binomial(6, 3)) / 2 - 1, Rational(9));
  EXPECT_TRUE(check_identity("ROWSUM", 2).pass);
}

TEST(Identities, NkkAtTwo) {
  auto s = identities::nkk_sides(2);
  Polynomial expected = parse_expr("(p + p^2)/2").numerator();
  EXPECT_EQ(s.binomial_form, expected);
  EXPECT_EQ(s.product_form, expected);
  EXPECT_EQ(s.harmonic_form, expected);
}

TEST(Identities, NkkUpToThirty) {
  CheckReport r = check_range("NKK", 30);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.results.size(), 30u);
  EXPECT_EQ(identities::nkk_sides(30).harmonic_form.degree(Var::p), 30u);
}

TEST(Identities, PartialFractions) {
  auto one = identities::pfrac_term(1, 1);
  Polynomial a = Polynomial::variable(Var::a), b = Polynomial::variable(Var::b);
  EXPECT_EQ(one.reduce(), RationalFunction(Polynomial(1), Polynomial(1) - a - b * b));
  for (long k = 1; k <= 8; ++k) EXPECT_TRUE(partial_fraction_check(k)) << k;
}

TEST(Identities, CorrectedGf2SubstitutionTerms) {
  for (long k = 1; k <= 10; ++k) EXPECT_TRUE(check_identity("X-PP12A", k).pass) << k;
}

TEST(Identities, SymbolicRangesPass) {
  for (const char* id : {"ID1", "ID2", "X2", "Y2"}) {
    CheckReport r = check_range(id, 25);
    EXPECT_TRUE(r.pass) << id;
    EXPECT_FALSE(r.first_failure.has_value());
  }
}

TEST(Identities, Sec6a2UpToFifty) { EXPECT_TRUE(check_range("SEC6A2", 50).pass); }

TEST(Identities, ExactRangesPass) {
  for (const char* id : {"SN2N", "Id0", "Id1", "Id2", "ROWSUM"}) EXPECT_TRUE(check_range(id, 60).pass) << id;
}

TEST(Identities, Id0RearrangedAgainstBruteHarmonic) {
  for (long n = 1; n <= 12; ++n) {
    Rational diff(0);
    for (long k = 1; k <= n; ++k)
      diff += make_rational(3, 2) * make_rational(binomial(2 * k, k), k) - make_rational(binomial(n + k, k), k);
    EXPECT_EQ(diff - testing::brute_mhs(n, {1}), 0) << n;
  }
}

TEST(Identities, NumericAgreesWithSymbolic) {
  testing::Gen gen(20261016);
  for (const char* id : {"ID1", "ID2", "X2", "Y2", "NKK"}) {
    for (long n : {1L, 2L, 5L, 9L}) {
      ASSERT_TRUE(check_identity(id, n).pass);
      int done = 0;
      while (done < 10) {
        Rational t = gen.rational(40, 13);
        try {
          EXPECT_TRUE(check_identity_at(id, n, t).pass) << id << " n=" << n << " t=" << t.get_str();
          ++done;
        } catch (const PoleError&) {
        }
      }
    }
  }
}

TEST(Identities, ParameterPoleIsReported) {
  EXPECT_THROW(check_identity_at("ID2", 1, Rational(1)), PoleError);
  EXPECT_THROW(check_identity_at("ID2", 3, Rational(2)), PoleError);
  EXPECT_THROW(check_identity_at("Id0", 3, Rational(2)), Error);
  EXPECT_THROW(check_identity("nope", 3), Error);
  EXPECT_THROW(check_range("Y2", 0), Error);
}

TEST(Identities, Id2AndX2AgreeUnderReflection) {
  for (long n = 1; n <= 30; ++n) EXPECT_TRUE(cross_check_id2_x2(n)) << n;
}

TEST(Identities, FailureCarriesWitness) {
  auto r = identities::rational_result(4, Rational(1), make_rational(3, 2));
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.witness, "-1/2");
  identities::Symbolic wrong{identities::id2(2, Var::a).lhs, RationalFunction(Polynomial(1))};
  auto w = identities::symbolic_result(2, wrong);
  EXPECT_FALSE(w.pass);
  EXPECT_FALSE(w.witness.empty());
}

TEST(Identities, RangeIsIndependentOfThreadCount) {
  CheckReport one = check_range("Id2", 30, std::nullopt, 1);
  CheckReport four = check_range("Id2", 30, std::nullopt, 4);
  ASSERT_EQ(one.results.size(), four.results.size());
  for (std::size_t i = 0; i < one.results.size(); ++i) {
    EXPECT_EQ(one.results[i].n, four.results[i].n);
    EXPECT_EQ(one.results[i].pass, four.results[i].pass);
  }
}

TEST(Identities, CatalogCoversCliIds) {
  for (const char* id : {"ID1", "ID2", "X2", "Y2", "SN2N", "Id0", "Id1", "Id2", "ROWSUM", "NKK", "SEC6A2", "PFRAC"})
    EXPECT_NO_THROW(identity_info(id));
}

}  // namespace
}  // namespace zetalab
