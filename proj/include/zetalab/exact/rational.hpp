#pragma once

// Exact scalars. Integer and Rational are GMP-backed; mpq_class keeps every
// value in lowest terms with a positive denominator, which is exactly the
// invariant the rest of the library relies on.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zetalab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A denominator vanished at the point being evaluated.
class PoleError : public Error {
 public:
  using Error::Error;
};

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw Error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Integer ipow(const Integer& base, unsigned long e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

inline Rational rpow(const Rational& base, long e) {
  if (e < 0) {
    if (base == 0) throw Error("zero to a negative power");
    return rpow(Rational(1) / base, -e);
  }
  Rational out(ipow(base.get_num(), static_cast<unsigned long>(e)),
               ipow(base.get_den(), static_cast<unsigned long>(e)));
  return out;
}

inline Rational rabs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

inline Integer factorial(unsigned long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

/// Parses "a" or "a/b" (optional leading sign, decimal digits).
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  auto parse_int = [](const std::string& part) {
    if (part.empty()) throw Error("malformed rational literal");
    std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (start == part.size()) throw Error("malformed rational literal");
    for (std::size_t i = start; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') throw Error("malformed rational literal '" + part + "'");
    return Integer(part[0] == '+' ? part.substr(1) : part);
  };
  if (slash == std::string::npos) return Rational(parse_int(s));
  Integer num = parse_int(s.substr(0, slash));
  Integer den = parse_int(s.substr(slash + 1));
  if (den == 0) throw Error("zero denominator in rational literal");
  return make_rational(num, den);
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Rounds r to `digits` decimal places (round half away from zero).
inline std::string to_decimal(const Rational& r, unsigned digits) {
  Integer scale = ipow(Integer(10), digits);
  Rational scaled = rabs(r) * scale;
  Integer q = scaled.get_num() / scaled.get_den();
  Rational frac = scaled - Rational(q);
  if (frac * 2 >= 1) ++q;
  std::string body = q.get_str();
  if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
  std::string out = (r < 0 && q != 0) ? "-" : "";
  out += body.substr(0, body.size() - digits);
  if (digits > 0) out += "." + body.substr(body.size() - digits);
  return out;
}

/// Lower bound d such that |r| <= 10^-d, i.e. how many decimals r certifies
/// as an error bound. Returns a large value for r == 0.
inline long certified_decimals(const Rational& bound) {
  if (bound == 0) return 1000000;
  Rational b = rabs(bound);
  long d = 0;
  Rational ten_pow(1);
  while (b * ten_pow * 10 <= 1) {
    ten_pow *= 10;
    ++d;
  }
  return d;
}

inline double to_double(const Rational& r) { return r.get_d(); }

// ---------------------------------------------------------------------------
// Primes.

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2u, 3u, 5u, 7u}) {
    if (n % d == 0) return n == d;
  }
  for (std::uint64_t d = 11; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  if (hi < 2 || lo > hi) return out;
  std::vector<bool> composite(hi + 1, false);
  for (std::uint64_t i = 2; i * i <= hi; ++i) {
    if (composite[i]) continue;
    for (std::uint64_t j = i * i; j <= hi; j += i) composite[j] = true;
  }
  for (std::uint64_t i = std::max<std::uint64_t>(lo, 2); i <= hi; ++i)
    if (!composite[i]) out.push_back(i);
  return out;
}

/// Exponent of p in |n| (n != 0).
inline long integer_valuation(const Integer& n, const Integer& p) {
  if (n == 0) throw Error("valuation of zero");
  Integer rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

}  // namespace zetalab
