#include <zetalab/congruence.hpp>

#include <gtest/gtest.h>

#include "support/mhs_oracle.hpp"

namespace zetalab {
namespace {

TEST(Congruence, Co5AtSeven) { EXPECT_GE(eval_case_exact(congruence_case("CO5"), 7).valuation, 5); }

TEST(Congruence, TaAtSeven) { EXPECT_GE(eval_case_exact(congruence_case("TA"), 7).valuation, 4); }

TEST(Congruence, WolstenholmeAtFive) {
  Rational h4 = testing::brute_mhs(4, {1});
  EXPECT_EQ(h4, make_rational(25, 12));
  auto out = eval_case_exact(congruence_case("WOLSTENHOLME"), 5);
  EXPECT_EQ(out.valuation, 2);
  EXPECT_TRUE(out.pass);
}

TEST(Congruence, Co4bModularAtSeven) {
  const Integer p(7);
  Rational h6 = testing::brute_mhs(6, {1});
  EXPECT_EQ(h6, make_rational(49, 20));
  Rational lhs(0);
  for (long k = 1; k <= 6; ++k) lhs += make_rational(binomial(2 * k, k), Integer(k * k * k));
  auto out = eval_case_modular(congruence_case("CO4b"), 7);
  EXPECT_TRUE(out.pass);
  ASSERT_TRUE(out.lhs_residue && out.rhs_residue);
  EXPECT_EQ(*out.rhs_residue, mod_reduce(make_rational(-1, 10), p, 2));
  EXPECT_EQ(*out.lhs_residue, mod_reduce(lhs, p, 2));
  EXPECT_EQ(*out.lhs_residue, *out.rhs_residue);
}

TEST(Congruence, PppAtSevenBothPaths) {
  const auto& c = congruence_case("PPP");
  auto ex = eval_case_exact(c, 7);
  auto mo = eval_case_modular(c, 7);
  EXPECT_TRUE(ex.pass);
  EXPECT_TRUE(mo.pass);
  EXPECT_EQ(*ex.lhs_residue, Integer(1716));
  EXPECT_EQ(*mo.lhs_residue, Integer(1716));
  EXPECT_EQ(*mo.rhs_residue, Integer(1716));
}

TEST(Congruence, HypothesisIsEnforced) {
  for (const auto& c : congruence_catalog()) {
    EXPECT_THROW(eval_case_exact(c, 2), Error) << c.id;
    EXPECT_THROW(eval_case_modular(c, 2), Error) << c.id;
  }
  EXPECT_THROW(eval_case_exact(congruence_case("CO1"), 5), Error);
  EXPECT_THROW(eval_case_exact(congruence_case("CO1"), 9), Error);
  EXPECT_THROW(scan("CO1", 5, 50, ScanPath::Exact), Error);
}

TEST(Congruence, ScanExamples) {
  auto co5 = scan("CO5", 7, 97, ScanPath::Both);
  EXPECT_EQ(co5.status(), "pass");
  EXPECT_GE(co5.min_valuation, 5);
  EXPECT_EQ(co5.primes.size(), 22u);
  auto sun = scan("SUN-C1", 11, 97, ScanPath::Exact);
  EXPECT_EQ(sun.status(), "conjecture-consistent");
  auto h1112 = scan("H1112", 7, 97, ScanPath::Exact);
  EXPECT_EQ(h1112.status(), "pass");
  EXPECT_GE(h1112.min_valuation, 1);
}

TEST(Congruence, Co5AlsoHoldsAtFive) {
  auto r = eval_case_exact(congruence_case("CO5"), 5);
  EXPECT_TRUE(r.pass);
  EXPECT_GE(r.valuation, 5);
}

TEST(Congruence, CentralBinomialStream) {
  std::vector<Integer> seven{2, 6, 6, 0, 0, 0};
  EXPECT_EQ(central_binomial_stream(7, 1, 6), seven);
  EXPECT_EQ(central_binomial_stream(5, 2, 1), std::vector<Integer>{2});
  EXPECT_THROW(central_binomial_stream(7, 1, 7), Error);
  for (long p : {3L, 11L, 97L})
    for (unsigned m : {1u, 3u, 7u}) {
      auto s = central_binomial_stream(p, m, p - 1);
      Integer mod = ipow(Integer(p), m);
      for (long k = 1; k < p; ++k) {
        Integer expected = binomial(static_cast<unsigned long>(2 * k), static_cast<unsigned long>(k)) % mod;
        ASSERT_EQ(s[static_cast<std::size_t>(k - 1)], expected) << p << " " << m << " " << k;
      }
    }
}

TEST(Congruence, PrecisionPlanExamples) {
  auto co4b = precision_plan(congruence_case("CO4b"));
  EXPECT_EQ(co4b.at("H_{p-1}(1)"), 4);
  auto co5 = precision_plan(congruence_case("CO5"));
  EXPECT_EQ(co5.at("H_{p-1}(1)"), 5);
  EXPECT_EQ(co5.at("H_{p-1}(3)"), 3);
  auto ppp = precision_plan(congruence_case("PPP"));
  EXPECT_EQ(ppp.at("H_{p-1}(3)"), 3);
  EXPECT_EQ(ppp.at("C(2p,p)"), 6);
}

TEST(Congruence, PathsAgreeUpToHundred) {
  for (const auto& c : congruence_catalog()) {
    auto r = scan(c, c.p0 + 1, 100, ScanPath::Both);
    EXPECT_EQ(r.errors, 0u) << c.id;
    for (const auto& pr : r.primes) {
      ASSERT_TRUE(pr.paths_agree.has_value()) << c.id << " p=" << pr.p << " " << pr.error;
      EXPECT_TRUE(*pr.paths_agree) << c.id << " p=" << pr.p;
    }
    EXPECT_TRUE(r.pass) << c.id;
  }
}

TEST(Congruence, WolstenholmeValuations) {
  for (auto p : primes_in_range(5, 300)) {
    Integer P(static_cast<unsigned long>(p));
    EXPECT_GE(padic_valuation(mhs(p - 1, {1}), P), 2) << p;
    EXPECT_GE(padic_valuation(mhs(p - 1, {2}), P), 1) << p;
  }
}

TEST(Congruence, SunBernoulliBranches) {
  auto ids = expand_case_ids("SUNZH");
  EXPECT_EQ(ids.size(), 6u);
  EXPECT_EQ(expand_case_ids("SUNZH-ODD").size(), 3u);
  for (const auto& id : ids) {
    const auto& c = congruence_case(id);
    auto r = scan(c, c.p0 + 1, 100, ScanPath::Exact);
    EXPECT_EQ(r.status(), "pass") << id;
  }
  EXPECT_THROW(eval_case_exact(congruence_case("SUNZH-ODD-3"), 101), Error);
  CongruenceOptions wide;
  wide.bernoulli_cap = 110;
  EXPECT_TRUE(eval_case_exact(congruence_case("SUNZH-ODD-3"), 101, wide).pass);
}

TEST(Congruence, MonotonePrecision) {
  for (const char* id : {"CO5", "CO4b", "TA", "PPP", "H12", "RHS6"}) {
    const auto& c = congruence_case(id);
    for (long p : {7L, 11L, 13L}) {
      long v = eval_case_exact(c, p).valuation;
      for (unsigned m = 1; m <= 8; ++m) {
        CongruenceOptions hi, lo;
        hi.mod_exp = m + 1;
        lo.mod_exp = m;
        bool pass_hi = eval_case_modular(c, p, hi).pass;
        bool pass_lo = eval_case_modular(c, p, lo).pass;
        if (pass_hi) EXPECT_TRUE(pass_lo) << id << " p=" << p << " m=" << m;
        EXPECT_EQ(pass_lo, v >= static_cast<long>(m)) << id << " p=" << p << " m=" << m;
      }
    }
  }
}

TEST(Congruence, PrecisionDeficitIsAnError) {
  using namespace cexpr;
  CongruenceCase bad{"BAD", 3, 1, cst(make_rational(1, 7)) * H({2}), cst(0), CaseStatus::Theorem, {}};
  EXPECT_THROW(eval_case_modular(bad, 7), Error);
  EXPECT_NO_THROW(eval_case_exact(bad, 7));
}

TEST(Congruence, PrintedD1MiddleTermFails) {
  // The printed middle expression, with 4pH_{p-1}(2)/3.
  using namespace cexpr;
  const auto& d1 = congruence_case("D1");
  CongruenceCase printed{"D1-PRINTED", 5, 2, d1.lhs,
                         cst(make_rational(8, 3)) * H({1}) * ppow(-2) + cst(make_rational(5, 3)) * H({3}) +
                             cst(make_rational(4, 3)) * ppow(1) * H({2}),
                         CaseStatus::Theorem, {}};
  EXPECT_EQ(scan(printed, 7, 31, ScanPath::Both).status(), "fail");
  EXPECT_EQ(scan("D1-MID", 7, 97, ScanPath::Both).status(), "pass");
}

TEST(Congruence, CatalogCoversCliIds) {
  for (const char* id : {"CO1", "CO2", "CO4b", "CO4c", "CO5", "CO5b", "CO5c", "TA", "PPP", "D1", "D2", "SUN-C1",
                         "SUN-C2", "H12", "H112", "H1112", "H22", "H13", "H212", "H122", "H113", "AUX1", "AUX2", "AUX3",
                         "RHS6", "WOLSTENHOLME"})
    EXPECT_NO_THROW(congruence_case(id)) << id;
  EXPECT_THROW(expand_case_ids("nope"), Error);
  EXPECT_EQ(expand_case_ids("all").size(), congruence_catalog().size());
}

}  // namespace
}  // namespace zetalab
