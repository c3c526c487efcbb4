#pragma once

// Apery-like series, the two bivariate generating functions and their
// coefficients, all summed in exact rationals. Every value carries an
// explicit error bound; decimals are only produced when rendering.

#include <zetalab/exact.hpp>
#include <zetalab/harmonic.hpp>
#include <zetalab/wz.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zetalab {

/// value with |value - limit| <= error_bound.
struct DigitsValue {
  Rational value;
  Rational error_bound;

  std::string decimal(unsigned digits) const { return to_decimal(value, digits); }
  long certified_digits() const { return certified_decimals(error_bound); }
};

inline Rational ten_to_minus(unsigned d) { return Rational(1) / Rational(ipow(Integer(10), d)); }

/// True when both values certify the same limit to within 10^-d.
inline bool agree_to(const DigitsValue& x, const DigitsValue& y, unsigned d) {
  return rabs(x.value - y.value) + x.error_bound + y.error_bound <= ten_to_minus(d);
}

// ---------------------------------------------------------------------------
// Oracles.

namespace detail {

inline Rational inverse_power(long k, long s) { return Rational(1) / Rational(ipow(Integer(k), static_cast<unsigned long>(s))); }

/// s (s+1) ... (s+len-1).
inline Integer rising(long s, long len) {
  Integer out(1);
  for (long i = 0; i < len; ++i) out *= s + i;
  return out;
}

}  // namespace detail

/// sum_{k >= N} k^-s by Euler-Maclaurin. For f(x) = x^-s every derivative
/// has constant sign, so the remainder is bounded by the first omitted
/// correction term; twice that is reported.
inline DigitsValue zeta_tail(long s, long N, const Rational& target) {
  if (s < 2) throw Error("zeta_tail: s must be at least 2");
  if (N < 1) throw Error("zeta_tail: N must be positive");
  Rational v = Rational(1) / (Rational(ipow(Integer(N), static_cast<unsigned long>(s - 1))) * (s - 1)) +
               detail::inverse_power(N, s) / 2;
  for (long j = 1;; ++j) {
    Rational term = bernoulli(static_cast<unsigned>(2 * j)) / Rational(factorial(static_cast<unsigned long>(2 * j))) *
                    Rational(detail::rising(s, 2 * j - 1)) * detail::inverse_power(N, s + 2 * j - 1);
    Rational next = bernoulli(static_cast<unsigned>(2 * j + 2)) /
                    Rational(factorial(static_cast<unsigned long>(2 * j + 2))) *
                    Rational(detail::rising(s, 2 * j + 1)) * detail::inverse_power(N, s + 2 * j + 1);
    v += term;
    Rational bound = 2 * rabs(next);
    if (bound <= target) return {v, bound};
    if (rabs(next) > rabs(term)) throw Error("zeta_tail: Euler-Maclaurin terms stopped decreasing; raise N");
  }
}

/// zeta(s) to d certified decimals.
inline DigitsValue zeta_oracle(long s, unsigned d) {
  if (s < 2) throw Error("zeta_oracle: s must be at least 2");
  const long N = 10 + static_cast<long>(d);
  Rational head(0);
  for (long k = 1; k < N; ++k) head += detail::inverse_power(k, s);
  DigitsValue tail = zeta_tail(s, N, ten_to_minus(d + 2));
  return {head + tail.value, tail.error_bound};
}

/// arctan(1/x) by its alternating series; the error is below the first omitted term.
inline DigitsValue arctan_inverse(long x, const Rational& target) {
  Rational sum(0);
  Integer x2 = Integer(x) * x, power(x);
  for (long n = 0;; ++n) {
    Rational term = Rational(1) / (Rational(power) * (2 * n + 1));
    sum += n % 2 == 0 ? term : Rational(-term);
    power *= x2;
    Rational next = Rational(1) / (Rational(power) * (2 * n + 3));
    if (next <= target) return {sum, next};
  }
}

/// pi = 16 arctan(1/5) - 4 arctan(1/239).
inline DigitsValue pi_oracle(unsigned d) {
  Rational target = ten_to_minus(d + 4);
  DigitsValue a = arctan_inverse(5, target), b = arctan_inverse(239, target);
  return {16 * a.value - 4 * b.value, 16 * a.error_bound + 4 * b.error_bound};
}

/// x^2 for an enclosed positive x: |x^2 - X^2| <= e (2x + e).
inline DigitsValue square(const DigitsValue& x) {
  return {x.value * x.value, x.error_bound * (2 * rabs(x.value) + x.error_bound)};
}

// ---------------------------------------------------------------------------
// Apery-like series.

struct SeriesInfo {
  std::string id;
  long zeta_argument;       // the series sums to zeta(zeta_argument)
  Rational term_constant;   // |t_k| <= term_constant / C(2k,k)
  std::string formula;
};

inline const std::vector<SeriesInfo>& series_catalog() {
  static const std::vector<SeriesInfo> all{
      {"S12-Z3", 3, make_rational(5, 2), "(5/2) sum (-1)^(k-1) / (k^3 C(2k,k))"},
      {"S12-Z5", 5, Rational(7), "(1/2) sum (-1)^(k-1) / C(2k,k) * (4/k^5 - 5 H_{k-1}(2)/k^3)"},
      {"S34-Z3", 3, Rational(5), "sum 1/C(2k,k) * (2/k^3 + 3 H_{k-1}(1)/k^2)"},
      {"S34-Z4", 4, Rational(21), "3 sum 1/C(2k,k) * (1/k^4 - 3 H_{k-1}(2)/k^2)"},
      {"BBB", 2, Rational(3), "3 sum 1/(k^2 C(2k,k))"},
  };
  return all;
}

inline const SeriesInfo& series_info(std::string_view id) {
  for (const auto& s : series_catalog())
    if (s.id == id) return s;
  throw Error("unknown series '" + std::string(id) + "'");
}

/// The k-th term of the series.
inline Rational series_term(std::string_view id, long k, const Integer& central, const Rational& h1_prev,
                            const Rational& h2_prev) {
  const Rational c(central);
  const Rational sign = k % 2 == 1 ? 1 : -1;
  if (id == "S12-Z3") return make_rational(5, 2) * sign / (c * k * k * k);
  if (id == "S12-Z5") {
    Rational k3 = Rational(k) * k * k;
    return sign / (2 * c) * (Rational(4) / (k3 * k * k) - 5 * h2_prev / k3);
  }
  if (id == "S34-Z3") return (Rational(2) / (Rational(k) * k * k) + 3 * h1_prev / (Rational(k) * k)) / c;
  if (id == "S34-Z4") return 3 * (Rational(1) / (Rational(k) * k * k * k) - 3 * h2_prev / (Rational(k) * k)) / c;
  if (id == "BBB") return Rational(3) / (c * k * k);
  throw Error("unknown series '" + std::string(id) + "'");
}

/// Bound on the tail after K terms: with C(2k,k) >= 4^k/(2k), |t_k| <= c 2k/4^k,
/// and consecutive bounds shrink by (k+1)/(4k) <= 1/2, so the tail is at most
/// twice its first bound.
inline Rational series_tail_bound(const SeriesInfo& info, long K) {
  return 2 * info.term_constant * Rational(2 * (K + 1)) / Rational(ipow(Integer(4), static_cast<unsigned long>(K + 1)));
}

/// Partial sums S_1..S_K.
inline std::vector<Rational> series_partial_sums(std::string_view id, long K) {
  series_info(id);
  std::vector<Rational> out;
  Rational sum(0), h1(0), h2(0);
  Integer central(1);
  for (long k = 1; k <= K; ++k) {
    central = central * (2 * (2 * k - 1)) / k;
    sum += series_term(id, k, central, h1, h2);
    out.push_back(sum);
    h1 += Rational(1, k);
    h2 += Rational(1, k * k);
  }
  return out;
}

inline DigitsValue apery_partial(std::string_view id, long K) {
  if (K < 1) throw Error("at least one term is needed");
  return {series_partial_sums(id, K).back(), series_tail_bound(series_info(id), K)};
}

struct AperyResult {
  DigitsValue value;
  long terms = 0;
};

inline AperyResult apery_eval(std::string_view id, unsigned digits, unsigned max_digits = 50) {
  if (digits < 1) throw Error("digits must be at least 1");
  if (digits > max_digits) throw Error("digits above the configured maximum " + std::to_string(max_digits));
  const SeriesInfo& info = series_info(id);
  const Rational target = ten_to_minus(digits) / 2;
  long K = 1;
  while (series_tail_bound(info, K) > target) ++K;
  return {apery_partial(id, K), K};
}

// ---------------------------------------------------------------------------
// Generating functions.

enum class GF { GF1, GF2 };
enum class GFSide { LHS, RHS };

inline GF parse_gf(std::string_view s) {
  if (s == "gf1" || s == "GF1") return GF::GF1;
  if (s == "gf2" || s == "GF2") return GF::GF2;
  throw Error("unknown generating function '" + std::string(s) + "'");
}

struct GfOptions {
  Rational region = make_rational(1, 4);  // |a|, |b| <= region
};

namespace detail {

inline void check_region(const Rational& a, const Rational& b, const GfOptions& opt) {
  // The ratio bounds below rely on |a|, |b| <= 1/2.
  if (opt.region > make_rational(1, 2)) throw Error("convergence region may not exceed 1/2");
  if (rabs(a) > opt.region || rabs(b) > opt.region)
    throw Error("parameters outside region: |a|, |b| must be <= " + opt.region.get_str());
}

/// sum_{k>=1} k^-e0 / (1 - alpha k^-g - beta k^-2g): the head k < N exactly,
/// the tail as sum_n c_n zeta_N(e0 + g n) with c_n = alpha c_{n-1} + beta c_{n-2}.
/// |c_n| <= rho^n for rho = |alpha| + sqrt|beta| (passed in as rho).
inline DigitsValue lhs_by_expansion(long e0, long g, const Rational& alpha, const Rational& beta, const Rational& rho,
                                    unsigned digits) {
  const Rational target = ten_to_minus(digits) / 4;
  const long N = 20 + static_cast<long>(digits) / 2;
  Rational head(0);
  for (long k = 1; k < N; ++k) {
    Rational kg = rpow(Rational(k), g);
    Rational den = kg * kg - alpha * kg - beta;
    if (den == 0) throw PoleError("pole at k=" + std::to_string(k));
    head += rpow(Rational(k), 2 * g - e0) / den;
  }
  // Truncation after index T: sum_{n>T} rho^n * 2 N^{1-e0-gn} <= 4 rho^{T+1} N^{1-e0-g(T+1)}.
  const Rational Ng = rpow(Rational(N), g);
  if (rho >= Ng / 2) throw Error("expansion does not converge at this N");
  long T = 0;
  while (4 * rpow(rho, T + 1) * rpow(Rational(N), 1 - e0 - g * (T + 1)) > target) ++T;
  Rational tail(0), err = 4 * rpow(rho, T + 1) * rpow(Rational(N), 1 - e0 - g * (T + 1));
  Rational c_prev(0), c(1);
  for (long n = 0; n <= T; ++n) {
    if (c != 0) {
      DigitsValue z = zeta_tail(e0 + g * n, N, target / (T + 1));
      tail += c * z.value;
      err += rabs(c) * z.error_bound;
    }
    Rational c_next = alpha * c + beta * c_prev;
    c_prev = c;
    c = c_next;
  }
  return {head + tail, err};
}

/// Sums the right-hand side term by term. `ratio_bound(k)` bounds |t_{k+1}/t_k|
/// for every index >= k and is non-increasing; once it is <= 1/3 the tail after
/// K is at most |t_K|/2. The observed ratios must respect the bound.
template <class Term, class RatioBound>
DigitsValue rhs_sum(Term&& next_term, RatioBound&& ratio_bound, unsigned digits) {
  const Rational target = ten_to_minus(digits) / 4;
  const Rational third = make_rational(1, 3);
  Rational sum(0), prev(0);
  for (long k = 1; k <= 100000; ++k) {
    Rational t = next_term(k);
    sum += t;
    Rational u = ratio_bound(k);
    if (k > 1 && prev != 0 && ratio_bound(k - 1) <= third && rabs(t) > rabs(prev) * ratio_bound(k - 1))
      throw Error("runtime ratio test failed at k=" + std::to_string(k) + "; refusing to certify digits");
    prev = t;
    if (u <= third && rabs(t) / 2 <= target) return {sum, rabs(t) / 2};
  }
  throw Error("right-hand side did not reach the requested precision");
}

}  // namespace detail

/// One side of GF1 or GF2 at rational (a, b).
inline DigitsValue gf_eval(GF which, GFSide side, const Rational& a, const Rational& b, unsigned digits,
                           const GfOptions& opt = {}) {
  if (digits < 1) throw Error("digits must be at least 1");
  detail::check_region(a, b, opt);
  const Rational a2 = a * a, b2 = b * b;
  if (side == GFSide::LHS) {
    // GF2: 1/(k^2 - ak - b^2) = k^-2 / (1 - a/k - b^2/k^2).
    // GF1: k/(k^4 - a^2k^2 - b^4) = k^-3 / (1 - a^2/k^2 - b^4/k^4).
    if (which == GF::GF2) return detail::lhs_by_expansion(2, 1, a, b2, rabs(a) + rabs(b), digits);
    return detail::lhs_by_expansion(3, 2, a2, b2 * b2, a2 + b2, digits);
  }
  Integer central(1);
  Rational running(1);  // prod_{j<k} numerator factors / prod_{j<k} denominator factors
  if (which == GF::GF2) {
    auto term = [&](long k) -> Rational {
      central = central * (2 * (2 * k - 1)) / k;
      Rational den = Rational(k * k) - a * k - b2;
      if (den == 0) throw PoleError("pole: j^2 - aj - b^2 vanishes at j=" + std::to_string(k));
      running /= den;
      Rational t = (Rational(3 * k) - a) / (Rational(central) * k) * running;
      running *= Rational(k * k) - a2 - 4 * b2;
      return t;
    };
    // |3k+3-a|/|3k-a| * k/(2(2k+1)) * |k^2-a^2-4b^2| / |(k+1)^2-a(k+1)-b^2|; the middle
    // factor is < 1/4 and the last <= 1 for |a|, |b| <= 1/2.
    auto bound = [&](long k) -> Rational { return (Rational(3 * k + 3) + rabs(a)) / (Rational(3 * k) - rabs(a)) / 4; };
    return detail::rhs_sum(term, bound, digits);
  }
  auto term = [&](long k) -> Rational {
    central = central * (2 * (2 * k - 1)) / k;
    Rational k2(k * k);
    Rational den = k2 * k2 - a2 * k2 - b2 * b2;
    if (den == 0) throw PoleError("pole: j^4 - a^2j^2 - b^4 vanishes at j=" + std::to_string(k));
    running /= den;
    Rational t = (5 * k2 - a2) / (2 * Rational(central) * k) * running;
    if (k % 2 == 0) t = -t;
    running *= (k2 - a2) * (k2 - a2) + 4 * b2 * b2;
    return t;
  };
  // |5(k+1)^2-a^2|/|5k^2-a^2| * k/(2(2k+1)) * ((k^2-a^2)^2+4b^4)/((k+1)^4-a^2(k+1)^2-b^4),
  // the last factor <= 1 for |a|, |b| <= 1/2.
  auto bound = [&](long k) -> Rational { return Rational(5 * (k + 1) * (k + 1)) / (5 * Rational(k * k) - a2) / 4; };
  return detail::rhs_sum(term, bound, digits);
}

// ---------------------------------------------------------------------------
// Coefficient extraction from the GF2 right-hand side.

struct ExtractedCoefficient {
  unsigned r = 0, s = 0;          // coefficient of a^r b^(2s)
  Rational partial_sum;           // certified part: the k <= k_max sum
  std::optional<Rational> refined;  // Aitken extrapolation, uncertified
  DigitsValue expected;           // C(r+s,r) zeta(2+r+2s)
  Rational deviation;             // |partial_sum - expected.value|
};

struct ExtractTable {
  unsigned r_max = 0, s_max = 0;
  long k_max = 0;
  TruncatedBiSeries series;  // sum of the term expansions, all stored orders
  std::vector<ExtractedCoefficient> coefficients;
  bool odd_b_vanish = true;  // every a^i b^j with j odd is exactly zero
};

inline ExtractTable gf_extract(unsigned r_max, unsigned s_max, long k_max = 200) {
  if (k_max < 3) throw Error("k_max must be at least 3");
  const unsigned order = std::max(1u, r_max + 2 * s_max);
  ExtractTable table;
  table.r_max = r_max;
  table.s_max = s_max;
  table.k_max = k_max;
  // Q_k = prod_{j<k} (j^2 - a^2 - 4b^2) / prod_{j<=k} (j^2 - aj - b^2).
  TruncatedBiSeries running = TruncatedBiSeries::constant(Rational(1), order);
  TruncatedBiSeries sum(order);
  std::vector<TruncatedBiSeries> history;
  Integer central(1);
  for (long k = 1; k <= k_max; ++k) {
    central = central * (2 * (2 * k - 1)) / k;
    running = running * biseries_invert_factor(static_cast<unsigned>(k), Rational(1), Rational(1), order);
    TruncatedBiSeries lead = TruncatedBiSeries::constant(Rational(3 * k), order) -
                             TruncatedBiSeries::monomial(Rational(1), 1, 0, order);
    sum += lead * running * (Rational(1) / (Rational(central) * k));
    if (k + 2 >= k_max) history.push_back(sum);
    TruncatedBiSeries factor = TruncatedBiSeries::constant(Rational(k * k), order) -
                               TruncatedBiSeries::monomial(Rational(1), 2, 0, order) -
                               TruncatedBiSeries::monomial(Rational(4), 0, 2, order);
    running = running * factor;
  }
  table.series = sum;
  for (unsigned i = 0; i <= order; ++i)
    for (unsigned j = 1; i + j <= order; j += 2)
      if (sum.coefficient(i, j) != 0) table.odd_b_vanish = false;
  for (unsigned s = 0; s <= s_max; ++s) {
    for (unsigned r = 0; r <= r_max; ++r) {
      ExtractedCoefficient c;
      c.r = r;
      c.s = s;
      c.partial_sum = sum.coefficient(r, 2 * s);
      DigitsValue z = zeta_oracle(2 + r + 2 * s, 30);
      Rational scale(binomial(r + s, r));
      c.expected = {scale * z.value, scale * z.error_bound};
      c.deviation = rabs(c.partial_sum - c.expected.value);
      const Rational x0 = history[0].coefficient(r, 2 * s), x1 = history[1].coefficient(r, 2 * s),
                     x2 = history[2].coefficient(r, 2 * s);
      Rational second = x2 - 2 * x1 + x0;
      if (second != 0) c.refined = x2 - (x2 - x1) * (x2 - x1) / second;
      table.coefficients.push_back(c);
    }
  }
  return table;
}

// ---------------------------------------------------------------------------

/// Partial sums of the W2 pair's sum over k >= n at rational z (the sum is 1).
inline TailTrace y1_partial(long n, const Rational& z, long k_max) {
  return infinite_tail_check(bundled_pair("W2"), n, z, k_max);
}

}  // namespace zetalab
