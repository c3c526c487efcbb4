#pragma once

// Residue rings Z/MZ for the modular fast path. Two interchangeable
// backends share one interface: a 64-bit one (products through unsigned
// __int128) for moduli below 2^63 and a GMP one for anything larger.
// Algorithms are templated on the ring and dispatched with with_mod_ring().

#include <zetalab/exact/rational.hpp>

#include <cstdint>
#include <utility>

namespace zetalab {

class ModRing64 {
 public:
  using value_type = std::uint64_t;

  explicit ModRing64(std::uint64_t modulus) : m_(modulus) {
    if (modulus < 2 || modulus >= (std::uint64_t{1} << 63)) throw Error("ModRing64: modulus out of range");
  }

  Integer modulus() const { return Integer(static_cast<unsigned long>(m_)); }
  value_type zero() const { return 0; }
  value_type one() const { return 1 % m_; }

  value_type from_int(long x) const {
    long r = x % static_cast<long>(m_);
    return static_cast<value_type>(r < 0 ? r + static_cast<long>(m_) : r);
  }
  value_type from_integer(const Integer& x) const {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(m_));
    return static_cast<value_type>(r.get_ui());
  }
  /// Throws if the denominator is not invertible.
  value_type from_rational(const Rational& x) const {
    return mul(from_integer(x.get_num()), inv(from_integer(x.get_den())));
  }
  Integer to_integer(value_type x) const { return Integer(static_cast<unsigned long>(x)); }

  value_type add(value_type x, value_type y) const {
    value_type s = x + y;
    return s >= m_ ? s - m_ : s;
  }
  value_type sub(value_type x, value_type y) const { return x >= y ? x - y : x + (m_ - y); }
  value_type neg(value_type x) const { return x == 0 ? 0 : m_ - x; }
  value_type mul(value_type x, value_type y) const {
    return static_cast<value_type>((static_cast<unsigned __int128>(x) * y) % m_);
  }
  value_type pow(value_type x, std::uint64_t e) const {
    value_type r = one();
    while (e > 0) {
      if (e & 1u) r = mul(r, x);
      x = mul(x, x);
      e >>= 1u;
    }
    return r;
  }
  value_type inv(value_type x) const {
    // Extended Euclid on signed 128-bit to stay exact.
    __int128 a = x, b = m_, u = 1, v = 0;
    while (b != 0) {
      __int128 q = a / b;
      a -= q * b;
      std::swap(a, b);
      u -= q * v;
      std::swap(u, v);
    }
    if (a != 1) throw Error("residue is not invertible");
    __int128 r = u % static_cast<__int128>(m_);
    if (r < 0) r += m_;
    return static_cast<value_type>(r);
  }
  bool is_zero(value_type x) const { return x == 0; }

 private:
  std::uint64_t m_;
};

class ModRingBig {
 public:
  using value_type = Integer;

  explicit ModRingBig(Integer modulus) : m_(std::move(modulus)) {
    if (m_ < 2) throw Error("ModRingBig: modulus out of range");
  }

  const Integer& modulus() const { return m_; }
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long x) const { return from_integer(Integer(x)); }
  value_type from_integer(const Integer& x) const {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m_.get_mpz_t());
    return r;
  }
  value_type from_rational(const Rational& x) const {
    return mul(from_integer(x.get_num()), inv(from_integer(x.get_den())));
  }
  Integer to_integer(const value_type& x) const { return x; }

  value_type add(const value_type& x, const value_type& y) const {
    Integer s = x + y;
    if (s >= m_) s -= m_;
    return s;
  }
  value_type sub(const value_type& x, const value_type& y) const {
    Integer s = x - y;
    if (s < 0) s += m_;
    return s;
  }
  value_type neg(const value_type& x) const { return x == 0 ? Integer(0) : Integer(m_ - x); }
  value_type mul(const value_type& x, const value_type& y) const {
    Integer r = x * y;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), m_.get_mpz_t());
    return r;
  }
  value_type pow(const value_type& x, std::uint64_t e) const {
    Integer r;
    mpz_powm_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(e), m_.get_mpz_t());
    return r;
  }
  value_type inv(const value_type& x) const {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m_.get_mpz_t()) == 0)
      throw Error("residue is not invertible");
    return r;
  }
  bool is_zero(const value_type& x) const { return x == 0; }

 private:
  Integer m_;
};

/// Calls fn(ring) with the cheapest backend able to hold the modulus.
template <class Fn>
decltype(auto) with_mod_ring(const Integer& modulus, Fn&& fn) {
  if (modulus < Integer(1) << 62) {
    return fn(ModRing64(static_cast<std::uint64_t>(modulus.get_ui())));
  }
  return fn(ModRingBig(modulus));
}

}  // namespace zetalab
