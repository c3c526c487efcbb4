#include <zetalab/wz.hpp>

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "support/generators.hpp"

namespace zetalab {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

WZPair fixture(const std::string& name) {
  return parse_pair(read_file(std::string(ZETALAB_FIXTURE_DIR) + "/" + name + ".wz"), name);
}

Rational z_of(const RationalFunction& r, const Rational& z) {
  Rational den = r.denominator().evaluate(Var::z, z).constant_value();
  return r.numerator().evaluate(Var::z, z).constant_value() / den;
}

// Closed forms taken straight from the product definitions, at rational z.
Rational w1_closed(long n, long k, const Rational& z) {
  Rational v = Rational(binomial(2 * k, k)) * (Rational(3 * k - 2 * n) + z);
  for (long j = 0; j <= k - 1; ++j) v *= Rational(j - n) * (Rational(j - n) + z);
  for (long j = 1; j <= k; ++j) v /= Rational(j * j) - z * z;
  return v;
}

Rational w2_closed(long n, long k, const Rational& z) {
  Rational v = (Rational(3 * k - 2 * n) + z) / (Rational(k) * Rational(binomial(2 * k, k)));
  for (long j = 1; j <= k - 1; ++j) v *= Rational(j * j) - z * z;
  for (long j = 1; j <= k; ++j)
    if (j != n) v /= Rational(j - n) * (Rational(j - n) + z);
  return v;
}

TEST(WZCatalog, BundledTextMatchesDataFiles) {
  for (const auto& [name, text] : wz_catalog::files())
    EXPECT_EQ(read_file(std::string(ZETALAB_DATA_DIR) + "/wz/" + name + ".wz"), std::string(text)) << name;
}

TEST(WZCheck, CatalogedPairsPass) {
  for (const char* name : {"W1", "W2", "W3"}) {
    WZReport r = wz_check(bundled_pair(name));
    EXPECT_TRUE(r.commutation) << name;
    EXPECT_TRUE(r.pass) << name;
    EXPECT_TRUE(r.residual.is_zero()) << name;
  }
  EXPECT_TRUE(shifts_commute(bundled_pair("W1prime").F));
}

TEST(WZCheck, PerturbedCertificateFails) {
  WZReport r = wz_check(fixture("W1-perturbed"));
  EXPECT_TRUE(r.commutation);
  EXPECT_FALSE(r.pass);
  EXPECT_FALSE(r.residual.is_zero());
}

TEST(WZCheck, PrintedSecondCertificateFails) {
  WZReport r = wz_check(fixture("W2-printed"));
  EXPECT_FALSE(r.pass);
  EXPECT_FALSE(r.residual.is_zero());
}

TEST(WZCheck, IncompatibleShiftsRejected) {
  WZPair bad = parse_pair("shiftN=n\nshiftK=n*k\nbase=(1,1,1)\ncertificate=k\n");
  EXPECT_FALSE(shifts_commute(bad.F));
  EXPECT_THROW(wz_check(bad), Error);
}

TEST(WZParse, Errors) {
  EXPECT_THROW(parse_pair("shiftN=n\nbase=(1,1,1)\n"), Error);
  EXPECT_THROW(parse_pair("shiftN=n\nshiftK=k\nbase=(1,1)\n"), Error);
  EXPECT_THROW(parse_pair("shiftN=n\nshiftK=k\nbase=(1,1,n)\n"), Error);
  EXPECT_THROW(parse_pair("shiftN=n\nshiftK=k\nbase=(1,1,1)\ncolour=red\n"), Error);
  EXPECT_THROW(parse_pair("shiftN=n+\nshiftK=k\nbase=(1,1,1)\n"), ParseError);
}

TEST(TermEval, Examples) {
  WZPair w1 = bundled_pair("W1");
  EXPECT_EQ(term_eval(w1.F, 1, 1).rational_function(), RationalFunction(2));
  for (long n = 2; n <= 10; ++n) EXPECT_EQ(certificate_eval(w1, n, 1).value.expand(), RationalFunction(-2)) << n;
  EXPECT_TRUE(term_eval(w1.F, 3, 4).value.is_zero());
}

TEST(TermEval, PoleIsNamed) {
  WZPair w1 = bundled_pair("W1");
  try {
    term_eval(w1.F, 2, 2, PathOrder::KFirst);
    FAIL();
  } catch (const PoleError& e) {
    EXPECT_NE(std::string(e.what()).find("(n,k)=(1,2)"), std::string::npos) << e.what();
  }
  EXPECT_NO_THROW(term_eval(w1.F, 2, 2));
}

TEST(TermEval, AgreesWithClosedForms) {
  WZPair w1 = bundled_pair("W1"), w2 = bundled_pair("W2");
  const Rational z = make_rational(2, 7);
  for (long n = 1; n <= 6; ++n) {
    for (long k = 1; k <= 8; ++k) {
      RationalFunction sym = term_eval(w1.F, n, k).rational_function();
      ASSERT_EQ(z_of(sym, z), w1_closed(n, k, z)) << n << "," << k;
      ASSERT_EQ(term_eval(w1.F, n, k, PathOrder::Auto, z).value.expand(), RationalFunction(w1_closed(n, k, z)));
      if (k >= n) ASSERT_EQ(z_of(term_eval(w2.F, n, k).rational_function(), z), w2_closed(n, k, z)) << n << "," << k;
    }
  }
  WZPair w3 = bundled_pair("W3");
  for (long n = 1; n <= 6; ++n)
    for (long k = 1; k <= 6; ++k)
      ASSERT_EQ(term_eval(w3.F, n, k).rational_function(), RationalFunction(Rational(binomial(n + k, k)) / k));
}

TEST(TermEval, PathIndependence) {
  testing::Gen gen(8080);
  int compared = 0;
  for (const char* name : {"W1", "W2", "W3"}) {
    WZPair pair = bundled_pair(name);
    for (int i = 0; i < 60 && compared < 100 * 3; ++i) {
      long n = gen.integer(1, 9), k = gen.integer(1, 9);
      std::optional<TermValue> a, b;
      try {
        a = term_eval(pair.F, n, k, PathOrder::KFirst);
        b = term_eval(pair.F, n, k, PathOrder::NFirst);
      } catch (const PoleError&) {
        continue;
      }
      ASSERT_TRUE(equal_value(to_fraction(a->value), to_fraction(b->value))) << name << " " << n << "," << k;
      ++compared;
    }
  }
  EXPECT_GE(compared, 100);
}

TEST(Telescope, Examples) {
  WZPair w1 = bundled_pair("W1");
  EXPECT_TRUE(equals(telescope_sum(w1, 1, false).sum, RationalFunction(2)));
  EXPECT_TRUE(equals(telescope_sum(w1, 5, false).sum, RationalFunction(10)));
  for (long n = 1; n <= 20; ++n) {
    TelescopeResult r = telescope_sum(w1, n);
    ASSERT_TRUE(r.increments_equal) << n;
    ASSERT_TRUE(equals(*r.direct_increment, RationalFunction(2))) << n;
    ASSERT_TRUE(equals(*r.telescoped_increment, RationalFunction(2))) << n;
  }
}

TEST(Telescope, SumIsTwoNUpTo100) {
  WZPair w1 = bundled_pair("W1");
  for (long n = 1; n <= 100; ++n) ASSERT_TRUE(equals(telescope_sum(w1, n, false).sum, RationalFunction(2 * n))) << n;
}

TEST(Telescope, BoundaryZeros) {
  WZPair w1 = bundled_pair("W1");
  for (long n = 1; n <= 50; ++n) {
    ASSERT_TRUE(term_eval(w1.F, n, n + 1).value.is_zero()) << n;
    ASSERT_TRUE(certificate_eval(w1, n, n + 2).value.is_zero()) << n;
  }
}

TEST(Telescope, OneBasedNormalization) {
  WZPair w1p = bundled_pair("W1prime");
  Polynomial n_minus_z = Polynomial::variable(Var::z) * Rational(-1);
  for (long n = 1; n <= 30; ++n) {
    FactoredFraction s = row_sum(w1p.F, n, 1, n);
    ASSERT_TRUE(equals(s, RationalFunction(Polynomial(2), n_minus_z + n))) << n;
  }
}

TEST(InfiniteTail, Examples) {
  WZPair w2 = bundled_pair("W2");
  TailTrace a = infinite_tail_check(w2, 1, make_rational(1, 3), 40);
  EXPECT_LT(to_double(a.deviations.back()), 1e-10);
  EXPECT_TRUE(a.geometric_decay);
  EXPECT_EQ(a.g_first, 0);
  TailTrace b = infinite_tail_check(w2, 2, Rational(0), 40);
  EXPECT_LT(to_double(b.deviations.back()), 1e-10);
  EXPECT_TRUE(b.geometric_decay);
  try {
    infinite_tail_check(w2, 1, Rational(1), 40);
    FAIL();
  } catch (const PoleError& e) {
    EXPECT_NE(std::string(e.what()).find("j^2 - z^2 at j=1"), std::string::npos);
  }
}

}  // namespace
}  // namespace zetalab
