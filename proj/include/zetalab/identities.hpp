#pragma once

// Finite identities, checked exactly for each n: symbolically in the free
// parameter where there is one, as rationals otherwise. Summands are built
// from their product formulas directly (running central binomials, loops
// over j), independently of the WZ engine.

#include <zetalab/exact.hpp>
#include <zetalab/harmonic.hpp>
#include <zetalab/parallel.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zetalab {

enum class IdentityField { Q, QA, QZ, QP, QAB, QAX };

inline std::string field_name(IdentityField f) {
  switch (f) {
    case IdentityField::Q: return "Q";
    case IdentityField::QA: return "Q(a)";
    case IdentityField::QZ: return "Q(z)";
    case IdentityField::QP: return "Q[p]";
    case IdentityField::QAB: return "Q(a,b)";
    case IdentityField::QAX: return "Q(a,x)";
  }
  return "?";
}

struct IdentityInfo {
  std::string id;
  IdentityField field;
  std::string statement;
  long default_n_max;
  bool numeric_parameter;  // supports instantiating the parameter with --param
};

inline const std::vector<IdentityInfo>& identity_catalog() {
  static const std::vector<IdentityInfo> all{
      {"ID1", IdentityField::QA,
       "sum_{k=1}^n C(2k,k) (5k^2-a^2) prod_{j<k} (n^2-j^2)(n^2+j^2-a^2) / prod_{j<=k} (n^2+(n-j)^2-a^2)(n^2+(n+j)^2-a^2)"
       " = 2/(n^2-a^2)",
       100, true},
      {"ID2", IdentityField::QA,
       "sum_{k=1}^n C(2k,k) (3k-2n+a)/(k^2-a^2) prod_{j<k} (j-n)(j-n+a)/(j^2-a^2) = 2/(n-a)", 100, true},
      {"X2", IdentityField::QA,
       "sum_{k=1}^n C(2k,k) (3k-a) prod_{j<k} (j-n)(j+n-a) / prod_{j<=k} (j^2-(a-2n)^2) = 2/(a-n)", 100, true},
      {"Y2", IdentityField::QZ,
       "sum_{k=1}^n C(2k,k) (3k-2n+z) prod_{j<k} (j-n)(j-n+z) / prod_{j<=k} (j^2-z^2) = 2/(n-z)", 100, true},
      {"SN2N", IdentityField::Q,
       "sum_{k=1}^n C(2k,k) k/(k^2-4n^2) prod_{j<k} (j^2-n^2)/(j^2-4n^2) = -2/(3n)", 200, false},
      {"Id0", IdentityField::Q, "(3/2) sum_{k<=n} C(2k,k)/k = sum_{k<=n} C(n+k,k)/k + H_n(1)", 200, false},
      {"Id1", IdentityField::Q,
       "sum_{k<=n} C(2k,k) (3H_k(1)/(2k) - 1/k^2) = sum_{k<=n} C(n+k,k) H_k(1)/k - H_n(2)", 200, false},
      {"Id2", IdentityField::Q,
       "sum_{k<=n} C(2k,k) (3H_k(2)/k - 1/(2k^3)) = sum_{k<=n} C(n+k,k) (H_k(2)+H_n(2))/k + H_n(2)H_n(1) - H_n(1,2)",
       200, false},
      {"ROWSUM", IdentityField::Q, "sum_{k=1}^n C(n+k,k) = C(2n+2,n+1)/2 - 1", 200, false},
      {"NKK", IdentityField::QP,
       "C(p-1+k,k) = (p/k) prod_{j<k} (1+p/j) = (1/k) sum_{j=0}^{k-1} p^(j+1) H_{k-1}({1}^j)   (index n plays k)", 30,
       true},
      {"SEC6A2", IdentityField::Q,
       "sum_{k=1}^n C(2k,k) 5k^2/(4n^4+k^4) prod_{j<k} (n^4-j^4)/(4n^4+j^4) (1/(5k^2) + sum_{j<k} 1/(n^2+j^2)"
       " - 2 sum_{j<=k} (2n^2+j^2)/(4n^4+j^4)) = -2/n^4",
       200, false},
      {"PFRAC", IdentityField::QAB,
       "prod_{j<k} (j^2-a^2-4b^2) / prod_{j<=k} (j^2-aj-b^2) = sum_{m=1}^k C_{m,k}(a)/(m^2-am-b^2)   (index n plays k)",
       8, false},
      {"X-PP12A", IdentityField::QAX,
       "k-th terms of sum 1/((k-a)^2-x^2) = sum (3k-2a)/(k C(2k,k)) prod_{j<k} (j^2-4x^2) / prod_{j<=k} ((j-a)^2-x^2)"
       " equal the GF2 terms under a -> 2a, b^2 -> x^2-a^2 (corrected factor (j-a)^2-x^2)",
       30, false},
  };
  return all;
}

inline const IdentityInfo& identity_info(std::string_view id) {
  for (const auto& info : identity_catalog())
    if (info.id == id) return info;
  throw Error("unknown identity '" + std::string(id) + "'");
}

struct IdentityResult {
  long n = 0;
  bool pass = false;
  std::string witness;  // reduced difference when the check fails
};

namespace identities {

inline Polynomial var(Var v) { return Polynomial::variable(v); }

/// C(2k,k) from C(2k-2,k-1).
inline Integer next_central(const Integer& previous, long k) { return previous * (2 * (2 * k - 1)) / k; }

struct Symbolic {
  FactoredFraction lhs;
  RationalFunction rhs;
};

inline Symbolic id1(long n) {
  Polynomial a = var(Var::a), a2 = a * a;
  ChainSum chain;
  Polynomial running(1);
  Integer c(1);
  const long n2 = n * n;
  for (long k = 1; k <= n; ++k) {
    c = next_central(c, k);
    chain.extend_denominator(Polynomial(n2 + (n - k) * (n - k)) - a2);
    chain.extend_denominator(Polynomial(n2 + (n + k) * (n + k)) - a2);
    chain.add((Polynomial(5 * k * k) - a2) * running * Rational(c));
    running *= Polynomial(n2 - k * k) * (Polynomial(n2 + k * k) - a2);
  }
  return {chain.value(), RationalFunction(Polynomial(2), Polynomial(n2) - a2)};
}

/// ID2 in the variable x; Y2 is the same statement with x = z.
inline Symbolic id2(long n, Var v) {
  Polynomial x = var(v);
  ChainSum chain;
  Polynomial running(1);
  Integer c(1);
  for (long k = 1; k <= n; ++k) {
    c = next_central(c, k);
    chain.extend_denominator(Polynomial(k * k) - x * x);
    chain.add((x + (3 * k - 2 * n)) * running * Rational(c));
    running *= Polynomial(k - n) * (x + (k - n));
  }
  return {chain.value(), RationalFunction(Polynomial(2), Polynomial(n) - x)};
}

inline Symbolic x2(long n) {
  Polynomial a = var(Var::a);
  Polynomial shift = a - 2 * n;
  ChainSum chain;
  Polynomial running(1);
  Integer c(1);
  for (long k = 1; k <= n; ++k) {
    c = next_central(c, k);
    chain.extend_denominator(Polynomial(k * k) - shift * shift);
    chain.add((Polynomial(3 * k) - a) * running * Rational(c));
    running *= Polynomial(k - n) * (Polynomial(k + n) - a);
  }
  return {chain.value(), RationalFunction(Polynomial(2), a - n)};
}

inline bool matches(const Symbolic& s) {
  return s.lhs.numerator() * s.rhs.denominator() == s.rhs.numerator() * s.lhs.expanded_denominator();
}

inline std::string truncate(std::string s, std::size_t max = 240) {
  if (s.size() > max) s = s.substr(0, max) + "...";
  return s;
}

inline IdentityResult symbolic_result(long n, const Symbolic& s) {
  IdentityResult r{n, matches(s), {}};
  if (!r.pass) r.witness = truncate((s.lhs.reduce() - s.rhs).to_string());
  return r;
}

inline IdentityResult rational_result(long n, const Rational& lhs, const Rational& rhs) {
  IdentityResult r{n, lhs == rhs, {}};
  if (!r.pass) r.witness = truncate(to_string(lhs - rhs));
  return r;
}

inline Rational checked_div(const Rational& x, const Rational& d, const std::string& what) {
  if (d == 0) throw PoleError("pole: " + what + " vanishes");
  return x / d;
}

// Exact rational identities --------------------------------------------------

inline IdentityResult sn2n(long n) {
  Rational sum(0), running(1);
  Integer c(1);
  const long n2 = n * n;
  for (long k = 1; k <= n; ++k) {
    c = next_central(c, k);
    sum += Rational(c) * running * Rational(k) / Rational(k * k - 4 * n2);
    running *= Rational(k * k - n2) / Rational(k * k - 4 * n2);
  }
  return rational_result(n, sum, make_rational(-2, 3 * n));
}

inline IdentityResult id0(long n) {
  Rational lhs(0), rhs(0);
  Integer c(1), b(1);
  for (long k = 1; k <= n; ++k) {
    c = next_central(c, k);
    b = b * (n + k) / k;
    lhs += Rational(c) / k;
    rhs += Rational(b) / k;
  }
  lhs *= make_rational(3, 2);
  rhs += mhs(static_cast<unsigned long>(n), {1});
  return rational_result(n, lhs, rhs);
}

inline IdentityResult id1_exact(long n) {
  Rational lhs(0), rhs(0), h1(0);
  Integer c(1), b(1);
  for (long k = 1; k <= n; ++k) {
    c = next_central(c, k);
    b = b * (n + k) / k;
    h1 += Rational(1, k);
    lhs += Rational(c) * (3 * h1 / (2 * k) - Rational(1, k * k));
    rhs += Rational(b) * h1 / k;
  }
  rhs -= mhs(static_cast<unsigned long>(n), {2});
  return rational_result(n, lhs, rhs);
}

inline IdentityResult id2_exact(long n) {
  const auto un = static_cast<unsigned long>(n);
  const Rational hn2 = mhs(un, {2});
  Rational lhs(0), rhs(0), h2(0);
  Integer c(1), b(1);
  for (long k = 1; k <= n; ++k) {
    c = next_central(c, k);
    b = b * (n + k) / k;
    h2 += Rational(1, k * k);
    lhs += Rational(c) * (3 * h2 / k - Rational(1, 2 * k * k * k));
    rhs += Rational(b) * (h2 + hn2) / k;
  }
  rhs += hn2 * mhs(un, {1}) - mhs(un, {1, 2});
  return rational_result(n, lhs, rhs);
}

inline IdentityResult rowsum(long n) {
  Integer b(1), sum(0);
  for (long k = 1; k <= n; ++k) {
    b = b * (n + k) / k;
    sum += b;
  }
  Rational rhs = Rational(binomial(static_cast<unsigned long>(2 * n + 2), static_cast<unsigned long>(n + 1))) / 2 - 1;
  return rational_result(n, Rational(sum), rhs);
}

inline IdentityResult sec6a2(long n) {
  const Integer n2 = Integer(n) * n, n4 = n2 * n2;
  Rational sum(0), running(1), s1(0), s2(0);
  Integer c(1);
  for (long k = 1; k <= n; ++k) {
    c = next_central(c, k);
    const Integer k2 = Integer(k) * k, k4 = k2 * k2;
    if (k > 1) {
      const Integer j2 = Integer(k - 1) * (k - 1), j4 = j2 * j2;
      running *= Rational(n4 - j4) / Rational(4 * n4 + j4);
      s1 += Rational(1) / Rational(n2 + j2);
    }
    s2 += Rational(2 * n2 + k2) / Rational(4 * n4 + k4);
    Rational bracket = Rational(1) / Rational(5 * k2) + s1 - 2 * s2;
    sum += Rational(c) * Rational(5 * k2) / Rational(4 * n4 + k4) * running * bracket;
  }
  return rational_result(n, sum, Rational(-2) / Rational(n4));
}

// C(p-1+k, k) three ways, as polynomials in p (index k).
struct NkkSides {
  Polynomial binomial_form, product_form, harmonic_form;
};

inline NkkSides nkk_sides(long k) {
  Polynomial p = var(Var::p);
  NkkSides s;
  Polynomial rising(1);
  for (long i = 0; i < k; ++i) rising *= p + i;
  s.binomial_form = rising * (Rational(1) / Rational(factorial(static_cast<unsigned long>(k))));
  Polynomial prod = p * make_rational(1, k);
  for (long j = 1; j < k; ++j) prod *= Polynomial(1) + p * make_rational(1, j);
  s.product_form = prod;
  Polynomial sum;
  for (long j = 0; j <= k - 1; ++j) {
    Rational h = j == 0 ? Rational(1) : mhs(static_cast<unsigned long>(k - 1), Composition(static_cast<std::size_t>(j), 1));
    sum += Polynomial::monomial(Monomial::of(Var::p, static_cast<unsigned>(j + 1)), h);
  }
  s.harmonic_form = sum * make_rational(1, k);
  return s;
}

inline IdentityResult nkk(long k) {
  NkkSides s = nkk_sides(k);
  IdentityResult r{k, s.binomial_form == s.product_form && s.product_form == s.harmonic_form, {}};
  if (!r.pass) r.witness = truncate((s.binomial_form - s.harmonic_form).to_string());
  return r;
}

// C_{m,k}(a) / (m^2 - a m - b^2), factored.
inline FactoredFraction pfrac_term(long m, long k) {
  Polynomial a = var(Var::a), b = var(Var::b);
  Polynomial num(1);
  Rational scalar(1);
  std::vector<Polynomial> den;
  Polynomial shift = a - 2 * m;
  for (long j = 1; j <= k - 1; ++j) num *= Polynomial(j * j) - shift * shift;
  for (long j = 1; j <= k; ++j) {
    if (j == m) continue;
    scalar /= j - m;
    den.push_back(Polynomial(j + m) - a);
  }
  den.push_back(Polynomial(m * m) - a * m - b * b);
  return {num * scalar, std::move(den)};
}

inline IdentityResult pfrac(long k) {
  Polynomial a = var(Var::a), b = var(Var::b);
  Polynomial num(1);
  std::vector<Polynomial> den;
  for (long j = 1; j <= k - 1; ++j) num *= Polynomial(j * j) - a * a - 4 * (b * b);
  for (long j = 1; j <= k; ++j) den.push_back(Polynomial(j * j) - a * j - b * b);
  FactoredFraction lhs(num, den);
  std::vector<FactoredFraction> terms;
  for (long m = 1; m <= k; ++m) terms.push_back(pfrac_term(m, k));
  FactoredFraction rhs = lcm_sum(terms);
  IdentityResult r{k, equal_value(lhs, rhs), {}};
  if (!r.pass) r.witness = truncate((lhs.reduce() - rhs.reduce()).to_string());
  return r;
}

// GF2 k-th terms with Var::b standing for b^2: left 1/(k^2-ak-B), right
// (3k-a)/(k C(2k,k)) prod_{j<k} (j^2-a^2-4B) / prod_{j<=k} (j^2-aj-B).
inline std::pair<FactoredFraction, FactoredFraction> gf2_terms_b2(long k, const Integer& central) {
  Polynomial a = var(Var::a), B = var(Var::b);
  FactoredFraction left(Polynomial(1), {Polynomial(k * k) - a * k - B});
  Polynomial num = (Polynomial(3 * k) - a) * (Rational(1) / (Rational(central) * k));
  std::vector<Polynomial> den;
  for (long j = 1; j <= k - 1; ++j) num *= Polynomial(j * j) - a * a - 4 * B;
  for (long j = 1; j <= k; ++j) den.push_back(Polynomial(j * j) - a * j - B);
  return {left, FactoredFraction(num, den)};
}

/// Corrected form with x represented by Var::z.
inline std::pair<FactoredFraction, FactoredFraction> pp12a_terms(long k, const Integer& central) {
  Polynomial a = var(Var::a), x = var(Var::z);
  auto shifted_sq = [&](long j) { return (Polynomial(j) - a) * (Polynomial(j) - a) - x * x; };
  FactoredFraction left(Polynomial(1), {shifted_sq(k)});
  Polynomial num = (Polynomial(3 * k) - 2 * a) * (Rational(1) / (Rational(central) * k));
  std::vector<Polynomial> den;
  for (long j = 1; j <= k - 1; ++j) num *= Polynomial(j * j) - 4 * (x * x);
  for (long j = 1; j <= k; ++j) den.push_back(shifted_sq(j));
  return {left, FactoredFraction(num, den)};
}

inline IdentityResult x_pp12a(long k) {
  Integer c = binomial(static_cast<unsigned long>(2 * k), static_cast<unsigned long>(k));
  auto [gl, gr] = gf2_terms_b2(k, c);
  Polynomial a = var(Var::a), x = var(Var::z);
  auto transform = [&](const FactoredFraction& f) {
    return f.substitute(Var::a, 2 * a).substitute(Var::b, x * x - a * a);
  };
  auto [pl, pr] = pp12a_terms(k, c);
  bool ok = equal_value(transform(gl), pl) && equal_value(transform(gr), pr);
  IdentityResult r{k, ok, {}};
  if (!ok) r.witness = truncate((transform(gr).reduce() - pr.reduce()).to_string());
  return r;
}

// Numeric instantiations, computed straight from the summands in Q ----------

inline std::pair<Rational, Rational> id1_at(long n, const Rational& a) {
  const Rational a2 = a * a;
  const long n2 = n * n;
  Rational sum(0), running(1);
  Integer c(1);
  for (long k = 1; k <= n; ++k) {
    c = next_central(c, k);
    Rational d = (Rational(n2 + (n - k) * (n - k)) - a2) * (Rational(n2 + (n + k) * (n + k)) - a2);
    running = checked_div(running, d, "summand denominator at k=" + std::to_string(k));
    sum += Rational(c) * (Rational(5 * k * k) - a2) * running;
    running *= Rational(n2 - k * k) * (Rational(n2 + k * k) - a2);
  }
  return {sum, checked_div(Rational(2), Rational(n2) - a2, "n^2 - a^2")};
}

inline std::pair<Rational, Rational> id2_at(long n, const Rational& x) {
  Rational sum(0), running(1);
  Integer c(1);
  for (long k = 1; k <= n; ++k) {
    c = next_central(c, k);
    running = checked_div(running, Rational(k * k) - x * x, "k^2 - a^2 at k=" + std::to_string(k));
    sum += Rational(c) * (Rational(3 * k - 2 * n) + x) * running;
    running *= Rational(k - n) * (Rational(k - n) + x);
  }
  return {sum, checked_div(Rational(2), Rational(n) - x, "n - a")};
}

inline std::pair<Rational, Rational> x2_at(long n, const Rational& a) {
  Rational sum(0), running(1);
  Integer c(1);
  const Rational shift = a - 2 * n;
  for (long k = 1; k <= n; ++k) {
    c = next_central(c, k);
    running = checked_div(running, Rational(k * k) - shift * shift, "k^2 - (a-2n)^2 at k=" + std::to_string(k));
    sum += Rational(c) * (Rational(3 * k) - a) * running;
    running *= Rational(k - n) * (Rational(k + n) - a);
  }
  return {sum, checked_div(Rational(2), a - n, "a - n")};
}

inline std::pair<Rational, Rational> nkk_at(long k, const Rational& p) {
  Rational lhs(1);
  for (long i = 0; i < k; ++i) lhs *= p + i;
  lhs /= Rational(factorial(static_cast<unsigned long>(k)));
  Rational rhs(0), power = p;
  for (long j = 0; j <= k - 1; ++j) {
    Rational h = j == 0 ? Rational(1) : mhs(static_cast<unsigned long>(k - 1), Composition(static_cast<std::size_t>(j), 1));
    rhs += power * h;
    power *= p;
  }
  return {lhs, rhs / k};
}

}  // namespace identities

/// Checks one identity at one n (for NKK, PFRAC and X-PP12A the index is k).
inline IdentityResult check_identity(std::string_view id, long n) {
  if (n < 1) throw Error("n must be positive");
  using namespace identities;
  if (id == "ID1") return symbolic_result(n, id1(n));
  if (id == "ID2") return symbolic_result(n, id2(n, Var::a));
  if (id == "Y2") return symbolic_result(n, id2(n, Var::z));
  if (id == "X2") return symbolic_result(n, x2(n));
  if (id == "SN2N") return sn2n(n);
  if (id == "Id0") return id0(n);
  if (id == "Id1") return id1_exact(n);
  if (id == "Id2") return id2_exact(n);
  if (id == "ROWSUM") return rowsum(n);
  if (id == "SEC6A2") return sec6a2(n);
  if (id == "NKK") return nkk(n);
  if (id == "PFRAC") return pfrac(n);
  if (id == "X-PP12A") return x_pp12a(n);
  throw Error("unknown identity '" + std::string(id) + "'");
}

/// Checks the identity with its parameter set to `value`, evaluating the
/// summands directly in Q. A parameter value hitting a pole throws PoleError.
inline IdentityResult check_identity_at(std::string_view id, long n, const Rational& value) {
  if (n < 1) throw Error("n must be positive");
  using namespace identities;
  std::pair<Rational, Rational> sides;
  if (id == "ID1") {
    sides = id1_at(n, value);
  } else if (id == "ID2" || id == "Y2") {
    sides = id2_at(n, value);
  } else if (id == "X2") {
    sides = x2_at(n, value);
  } else if (id == "NKK") {
    sides = nkk_at(n, value);
  } else {
    identity_info(id);
    throw Error("identity '" + std::string(id) + "' takes no numeric parameter");
  }
  return rational_result(n, sides.first, sides.second);
}

/// Partial fractions of prod_{j<k} (j^2-a^2-4b^2) / prod_{j<=k} (j^2-aj-b^2).
inline bool partial_fraction_check(long k) {
  if (k < 1) throw Error("k must be positive");
  return identities::pfrac(k).pass;
}

/// ID2 with a := 2n - z against X2 with a := z, as rational functions of z.
inline bool cross_check_id2_x2(long n) {
  using namespace identities;
  Polynomial z = var(Var::z);
  FactoredFraction from_id2 = id2(n, Var::a).lhs.substitute(Var::a, Polynomial(2 * n) - z);
  FactoredFraction from_x2 = x2(n).lhs.substitute(Var::a, z);
  return equal_value(from_id2, from_x2);
}

struct CheckReport {
  std::string id;
  std::string field;
  long n_min = 1, n_max = 0;
  std::optional<Rational> parameter;
  std::vector<IdentityResult> results;
  bool pass = false;
  std::optional<IdentityResult> first_failure;
};

inline CheckReport check_range(std::string_view id, long n_max, std::optional<Rational> parameter = std::nullopt,
                               unsigned threads = default_threads(), long n_min = 1) {
  const IdentityInfo& info = identity_info(id);
  if (n_max < n_min || n_min < 1) throw Error("empty n range");
  CheckReport report;
  report.id = info.id;
  report.field = parameter ? "Q" : field_name(info.field);
  report.n_min = n_min;
  report.n_max = n_max;
  report.parameter = parameter;
  report.results.resize(static_cast<std::size_t>(n_max - n_min + 1));
  // Larger n cost more; hand them out first.
  parallel_for(report.results.size(), threads, [&](std::size_t i) {
    long n = n_max - static_cast<long>(i);
    auto& slot = report.results[static_cast<std::size_t>(n - n_min)];
    slot = parameter ? check_identity_at(id, n, *parameter) : check_identity(id, n);
  });
  report.pass = true;
  for (const auto& r : report.results) {
    if (!r.pass && report.pass) {
      report.pass = false;
      report.first_failure = r;
    }
  }
  return report;
}

}  // namespace zetalab
