#include <zetalab/harmonic.hpp>

#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "support/mhs_oracle.hpp"

namespace zetalab {
namespace {

using testing::brute_mhs;

TEST(Mhs, Examples) {
  EXPECT_EQ(mhs(4, {1}), make_rational(25, 12));
  // 1/(1*4) + 1/(1*9) + 1/(2*9)
  EXPECT_EQ(mhs(3, {1, 2}), make_rational(5, 12));
  EXPECT_EQ(mhs(3, {1, 2}), testing::brute_mhs(3, {1, 2}));
  EXPECT_EQ(mhs(3, {1, 1, 1}), make_rational(1, 6));
  EXPECT_EQ(mhs(2, {1, 1, 1}), 0);
  EXPECT_THROW(mhs(3, {}), Error);
}

TEST(Mhs, RepeatExamples) {
  EXPECT_EQ(mhs_repeat(4, {{1}, 0, {2}}), make_rational(205, 144));
  EXPECT_EQ(mhs_repeat(2, {{1}, 2, {}}), make_rational(1, 2));
  EXPECT_EQ(mhs_repeat(1, {{2}, 1, {}}), 1);
}

TEST(Mhs, ParseComposition) {
  EXPECT_EQ(parse_composition("1,1,2"), (Composition{1, 1, 2}));
  EXPECT_EQ(parse_composition("{1}^3,2"), (Composition{1, 1, 1, 2}));
  EXPECT_EQ(parse_composition("{1,2}^2"), (Composition{1, 2, 1, 2}));
  EXPECT_EQ(parse_composition("{1}^0,2"), (Composition{2}));
  EXPECT_THROW(parse_composition("1,,2"), ParseError);
  EXPECT_THROW(parse_composition("{1}^0"), Error);
  EXPECT_THROW(parse_composition("0"), Error);
}

TEST(Mhs, PrefixTableExamples) {
  auto t = mhs_prefix_table(4, {1});
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[0].value, 1);
  EXPECT_EQ(t[1].value, make_rational(3, 2));
  EXPECT_EQ(t[2].value, make_rational(11, 6));
  EXPECT_EQ(t[3].value, make_rational(25, 12));
  auto u = mhs_prefix_table(2, {1, 2});
  EXPECT_EQ(u[0].value, 0);
  EXPECT_EQ(u[1].value, make_rational(1, 4));
  EXPECT_EQ(mhs_prefix_table(1, {5})[0].value, 1);
}

TEST(Mhs, AgreesWithBruteForce) {
  for (unsigned long n = 1; n <= 60; n += 7) {
    for (const Composition& c : {Composition{1}, Composition{2, 1}, Composition{1, 1, 2}, Composition{1, 2, 1, 1},
                                 Composition{3, 1}, Composition{2, 2}}) {
      if (c.size() >= 4 && n > 25) continue;
      ASSERT_EQ(mhs(n, c), brute_mhs(n, c)) << n << " " << to_string(c);
    }
  }
}

TEST(Mhs, PrefixTableAgreesWithDirectSums) {
  testing::Gen gen(31337);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t depth = static_cast<std::size_t>(gen.integer(1, 4));
    Composition c(depth, 1);
    long extra = gen.integer(0, 6 - static_cast<long>(depth));
    while (extra-- > 0) ++c[static_cast<std::size_t>(gen.integer(0, static_cast<long>(depth) - 1))];
    unsigned long n_max = static_cast<unsigned long>(gen.integer(1, 12));
    auto table = mhs_prefix_table(n_max, c);
    for (unsigned long n = 1; n <= n_max; ++n) ASSERT_EQ(table[n - 1].value, mhs(n, c));
    ASSERT_EQ(table.back().value, brute_mhs(n_max, c));
  }
}

TEST(MhsProperty, Stuffle) {
  for (unsigned long n = 1; n <= 30; ++n)
    for (unsigned s = 1; s <= 3; ++s)
      ASSERT_EQ(mhs(n, {1}) * mhs(n, {s}), mhs(n, {1, s}) + mhs(n, {s, 1}) + mhs(n, {s + 1}));
}

TEST(MhsProperty, DepthTwoReduction) {
  for (unsigned long n = 1; n <= 30; ++n) {
    Rational h2 = mhs(n, {2});
    ASSERT_EQ(2 * mhs(n, {2, 2}), h2 * h2 - mhs(n, {4}));
  }
}

TEST(MhsProperty, AllOnes) {
  for (unsigned long n = 1; n <= 20; ++n)
    ASSERT_EQ(mhs(n, Composition(n, 1)), Rational(1) / Rational(factorial(n)));
}

TEST(Mhs, ModularMatchesExact) {
  Integer p(13);
  Integer m = ipow(p, 5);
  for (const Composition& c : {Composition{1}, Composition{1, 2}, Composition{3}, Composition{1, 1, 2}}) {
    Rational exact = mhs(12, c);
    with_mod_ring(m, [&](const auto& ring) {
      ASSERT_EQ(ring.to_integer(mhs_mod(ring, 12, c)), mod_reduce(exact, p, 5));
    });
  }
}

// Akiyama-Tanigawa yields B_n with B_1 = +1/2; an independent route.
Rational akiyama_tanigawa(unsigned n) {
  std::vector<Rational> a(n + 1);
  for (unsigned m = 0; m <= n; ++m) {
    a[m] = make_rational(1, m + 1);
    for (unsigned j = m; j >= 1; --j) a[j - 1] = j * (a[j - 1] - a[j]);
  }
  return a[0];
}

TEST(Bernoulli, Examples) {
  EXPECT_EQ(bernoulli(0), 1);
  EXPECT_EQ(bernoulli(1), make_rational(-1, 2));
  EXPECT_EQ(bernoulli(2), make_rational(1, 6));
  EXPECT_EQ(bernoulli(3), 0);
  EXPECT_EQ(bernoulli(12), make_rational(-691, 2730));
}

TEST(Bernoulli, RecurrenceAndIndependentRoute) {
  for (unsigned n = 1; n <= 40; ++n) {
    Rational s(0);
    for (unsigned j = 0; j <= n; ++j) s += Rational(binomial(n + 1, j)) * bernoulli(j);
    ASSERT_EQ(s, 0) << n;
    if (n != 1) ASSERT_EQ(bernoulli(n), akiyama_tanigawa(n)) << n;
  }
}

}  // namespace
}  // namespace zetalab
