#pragma once

#include <zetalab/exact/rational.hpp>

#include <limits>
#include <optional>
#include <string>

namespace zetalab {

/// Marker for v_p(0).
inline constexpr long kInfiniteValuation = std::numeric_limits<long>::max();

inline void require_prime(const Integer& p) {
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
    throw Error("not a prime: " + p.get_str());
}

/// v_p(num) - v_p(den); kInfiniteValuation for r = 0.
inline long padic_valuation(const Rational& r, const Integer& p) {
  require_prime(p);
  if (r == 0) return kInfiniteValuation;
  return integer_valuation(r.get_num(), p) - integer_valuation(r.get_den(), p);
}

/// The residue class of r modulo p^m (denominator inverted mod p^m).
inline Integer mod_reduce(const Rational& r, const Integer& p, unsigned m) {
  require_prime(p);
  if (r != 0 && integer_valuation(r.get_den(), p) > 0)
    throw Error("negative valuation; use PadicView");
  Integer mod = ipow(p, m);
  Integer num, inv;
  mpz_fdiv_r(num.get_mpz_t(), r.get_num_mpz_t(), mod.get_mpz_t());
  mpz_invert(inv.get_mpz_t(), r.get_den_mpz_t(), mod.get_mpz_t());
  Integer out = num * inv;
  mpz_fdiv_r(out.get_mpz_t(), out.get_mpz_t(), mod.get_mpz_t());
  return out;
}

/// A p-adic number known to finite absolute precision: value = p^v * u where
/// the value is known modulo p^precision, so the unit u is known modulo
/// p^(precision - v). When precision <= v nothing is known beyond
/// "value == 0 mod p^precision" and the view is an inexact zero. Exact zero
/// has infinite valuation and infinite precision.
class PadicView {
 public:
  static PadicView exact_zero(const Integer& p) {
    PadicView x(p);
    x.exact_zero_ = true;
    x.valuation_ = kInfiniteValuation;
    x.precision_ = kInfiniteValuation;
    return x;
  }

  /// View of an exact rational, certified modulo p^precision.
  static PadicView from_rational(const Rational& r, const Integer& p, long precision) {
    if (r == 0) return exact_zero(p);
    PadicView x(p);
    x.valuation_ = padic_valuation(r, p);
    x.precision_ = precision;
    if (precision > x.valuation_) {
      Rational unit = r;
      if (x.valuation_ > 0) unit /= Rational(ipow(p, static_cast<unsigned long>(x.valuation_)));
      if (x.valuation_ < 0) unit *= Rational(ipow(p, static_cast<unsigned long>(-x.valuation_)));
      x.unit_ = mod_reduce(unit, p, static_cast<unsigned>(precision - x.valuation_));
    }
    return x;
  }

  /// View of a residue r known modulo p^precision with r standing for p^shift * r.
  static PadicView from_residue(const Integer& residue, const Integer& p, long precision, long shift = 0) {
    PadicView x(p);
    Integer mod = ipow(p, static_cast<unsigned long>(precision));
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), residue.get_mpz_t(), mod.get_mpz_t());
    x.precision_ = precision + shift;
    if (r == 0) {
      x.valuation_ = precision + shift;
      return x;
    }
    long w = integer_valuation(r, p);
    x.valuation_ = w + shift;
    mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), ipow(p, static_cast<unsigned long>(w)).get_mpz_t());
    x.unit_ = r % ipow(p, static_cast<unsigned long>(precision - w));
    return x;
  }

  const Integer& prime() const { return p_; }
  bool is_exact_zero() const { return exact_zero_; }
  /// True when nothing is known beyond divisibility by p^precision.
  bool is_inexact_zero() const { return !exact_zero_ && precision_ <= valuation_; }
  long valuation() const { return valuation_; }
  long precision() const { return precision_; }
  long relative_precision() const {
    return exact_zero_ ? kInfiniteValuation : std::max(0L, precision_ - valuation_);
  }
  const Integer& unit() const { return unit_; }

  PadicView operator-() const {
    PadicView x(*this);
    if (relative_precision() > 0 && !exact_zero_) {
      Integer mod = ipow(p_, static_cast<unsigned long>(relative_precision()));
      x.unit_ = (mod - unit_) % mod;
    }
    return x;
  }

  friend PadicView operator*(const PadicView& x, const PadicView& y) {
    x.check_same_prime(y);
    if (x.exact_zero_ || y.exact_zero_) return exact_zero(x.p_);
    PadicView out(x.p_);
    out.valuation_ = x.valuation_ + y.valuation_;
    long rel = std::min(x.relative_precision(), y.relative_precision());
    out.precision_ = out.valuation_ + rel;
    if (rel > 0) {
      Integer mod = ipow(x.p_, static_cast<unsigned long>(rel));
      out.unit_ = (x.unit_ * y.unit_) % mod;
    }
    return out;
  }

  friend PadicView operator+(const PadicView& x, const PadicView& y) {
    x.check_same_prime(y);
    if (x.exact_zero_) return y;
    if (y.exact_zero_) return x;
    long abs = std::min(x.precision_, y.precision_);
    long vmin = std::min(x.valuation_, y.valuation_);
    PadicView out(x.p_);
    out.precision_ = abs;
    if (abs <= vmin) {
      out.valuation_ = abs;
      return out;
    }
    Integer mod = ipow(x.p_, static_cast<unsigned long>(abs - vmin));
    auto lift = [&](const PadicView& t) -> Integer {
      if (t.valuation_ >= abs) return 0;
      return t.unit_ * ipow(x.p_, static_cast<unsigned long>(t.valuation_ - vmin));
    };
    Integer s = lift(x) + lift(y);
    mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), mod.get_mpz_t());
    if (s == 0) {
      out.valuation_ = abs;
      return out;
    }
    long w = integer_valuation(s, x.p_);
    out.valuation_ = vmin + w;
    mpz_divexact(s.get_mpz_t(), s.get_mpz_t(), ipow(x.p_, static_cast<unsigned long>(w)).get_mpz_t());
    out.unit_ = s % ipow(x.p_, static_cast<unsigned long>(abs - out.valuation_));
    return out;
  }

  friend PadicView operator-(const PadicView& x, const PadicView& y) { return x + (-y); }

  /// Residue of the value modulo p^m; requires valuation >= 0 and enough precision.
  Integer residue(long m) const {
    if (m <= 0) return 0;
    if (exact_zero_) return 0;
    if (precision_ < m) throw Error("precision deficit");
    if (valuation_ >= m) return 0;
    if (valuation_ < 0) throw Error("negative valuation has no residue");
    Integer mod = ipow(p_, static_cast<unsigned long>(m));
    Integer r = unit_ * ipow(p_, static_cast<unsigned long>(valuation_));
    return r % mod;
  }

  /// Certified test of value == 0 mod p^m.
  bool is_zero_mod(long m) const {
    if (exact_zero_) return true;
    if (precision_ < m) throw Error("precision deficit");
    return valuation_ >= m;
  }

  std::string to_string() const {
    if (exact_zero_) return "0";
    if (is_inexact_zero()) return "O(" + p_.get_str() + "^" + std::to_string(precision_) + ")";
    return p_.get_str() + "^" + std::to_string(valuation_) + "*" + unit_.get_str() + " + O(" +
           p_.get_str() + "^" + std::to_string(precision_) + ")";
  }

 private:
  explicit PadicView(Integer p) : p_(std::move(p)) {}

  void check_same_prime(const PadicView& other) const {
    if (p_ != other.p_) throw Error("PadicView primes differ");
  }

  Integer p_;
  bool exact_zero_ = false;
  long valuation_ = 0;
  long precision_ = 0;
  Integer unit_ = 0;
};

/// View of x / p^t: valuation and absolute precision both drop by t. When
/// `required_precision` is given, the result must still be certified modulo
/// p^required_precision.
inline PadicView padic_divide_by_power(const PadicView& x, long t,
                                       std::optional<long> required_precision = std::nullopt) {
  if (x.is_exact_zero()) return x;
  PadicView out = x * PadicView::from_residue(Integer(1), x.prime(), x.relative_precision() + 1, -t);
  if (required_precision && out.precision() < *required_precision) throw Error("precision deficit");
  return out;
}

}  // namespace zetalab
