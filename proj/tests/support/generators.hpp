#pragma once

// Seeded generators shared by the property-style tests.

#include <zetalab/exact.hpp>

#include <random>
#include <vector>

namespace zetalab::testing {

class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  Rational rational(long max_num = 9, long max_den = 5) {
    return make_rational(integer(-max_num, max_num), integer(1, max_den));
  }

  Rational nonzero_rational(long max_num = 9, long max_den = 5) {
    Rational r;
    do {
      r = rational(max_num, max_den);
    } while (r == 0);
    return r;
  }

  /// Random polynomial in the given variables with up to `terms` terms of
  /// per-variable degree at most `max_degree`.
  Polynomial polynomial(const std::vector<Var>& vars, int terms = 4, unsigned max_degree = 2) {
    Polynomial out;
    int count = static_cast<int>(integer(1, terms));
    for (int t = 0; t < count; ++t) {
      Monomial m;
      for (Var v : vars) m.exp[index_of(v)] = static_cast<std::uint16_t>(integer(0, max_degree));
      out += Polynomial::monomial(m, rational());
    }
    return out;
  }

  Polynomial nonzero_polynomial(const std::vector<Var>& vars, int terms = 4, unsigned max_degree = 2) {
    Polynomial p;
    do {
      p = polynomial(vars, terms, max_degree);
    } while (p.is_zero());
    return p;
  }

  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

}  // namespace zetalab::testing
