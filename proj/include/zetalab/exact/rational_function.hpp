#pragma once

#include <zetalab/exact/polynomial.hpp>

#include <string>
#include <utility>

namespace zetalab {

/// Reduced quotient of two polynomials. The canonical form has
/// gcd(num, den) = 1 and an integer-primitive denominator whose leading
/// coefficient (graded lex) is positive, so equal fractions compare equal
/// term by term.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(const Polynomial& p) : num_(p), den_(1) {}  // NOLINT
  RationalFunction(const Rational& c) : num_(c), den_(1) {}    // NOLINT
  RationalFunction(long c) : num_(c), den_(1) {}               // NOLINT
  RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
  }

  static RationalFunction variable(Var v) { return Polynomial::variable(v); }

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const { return num_.constant_value() / den_.constant_value(); }
  unsigned variable_mask() const { return num_.variable_mask() | den_.variable_mask(); }

  RationalFunction operator-() const { return unchecked(-num_, den_); }

  friend RationalFunction operator+(const RationalFunction& x, const RationalFunction& y) {
    if (x.den_ == y.den_) return {x.num_ + y.num_, x.den_};
    // With d = gcd of the denominators only d can share factors with the sum.
    Polynomial d = gcd(x.den_, y.den_);
    Polynomial xd = divide_exact(x.den_, d), yd = divide_exact(y.den_, d);
    Polynomial num = x.num_ * yd + y.num_ * xd;
    if (num.is_zero()) return {};
    Polynomial g = gcd(num, d);
    if (!g.is_constant()) {
      num = divide_exact(num, g);
      d = divide_exact(d, g);
    }
    return unchecked(std::move(num), xd * yd * d);
  }
  friend RationalFunction operator-(const RationalFunction& x, const RationalFunction& y) {
    return x + (-y);
  }
  friend RationalFunction operator*(const RationalFunction& x, const RationalFunction& y) {
    // Cross-cancel first so the gcd at the end works on smaller inputs.
    Polynomial g1 = gcd(x.num_, y.den_), g2 = gcd(y.num_, x.den_);
    return {divide_exact(x.num_, g1) * divide_exact(y.num_, g2),
            divide_exact(x.den_, g2) * divide_exact(y.den_, g1)};
  }
  friend RationalFunction operator/(const RationalFunction& x, const RationalFunction& y) {
    if (y.is_zero()) throw Error("division by zero polynomial");
    return x * unchecked(y.den_, y.num_);
  }
  RationalFunction& operator+=(const RationalFunction& y) { return *this = *this + y; }
  RationalFunction& operator-=(const RationalFunction& y) { return *this = *this - y; }
  RationalFunction& operator*=(const RationalFunction& y) { return *this = *this * y; }
  RationalFunction& operator/=(const RationalFunction& y) { return *this = *this / y; }

  RationalFunction pow(long e) const {
    if (e < 0) {
      if (is_zero()) throw Error("division by zero polynomial");
      return unchecked(den_, num_).pow(-e);
    }
    return {num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e))};
  }

  /// Canonical forms make structural equality the same as value equality.
  friend bool operator==(const RationalFunction& x, const RationalFunction& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }

  RationalFunction substitute(Var v, const Polynomial& q) const {
    return {num_.substitute(v, q), den_.substitute(v, q)};
  }
  RationalFunction shift(Var v, const Rational& by) const {
    return {num_.shift(v, by), den_.shift(v, by)};
  }
  RationalFunction evaluate(Var v, const Rational& value) const {
    Polynomial d = den_.evaluate(v, value);
    if (d.is_zero()) throw Error("division by zero polynomial");
    return {num_.evaluate(v, value), d};
  }

  /// Parseable text form, "(num)/(den)" or just "num".
  std::string to_string() const {
    if (den_ == Polynomial(1)) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

 private:
  static RationalFunction unchecked(Polynomial num, Polynomial den) {
    RationalFunction r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    r.fix_sign_and_content();
    return r;
  }

  void normalize() {
    if (den_.is_zero()) throw Error("division by zero polynomial");
    if (num_.is_zero()) {
      den_ = Polynomial(1);
      return;
    }
    Polynomial g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = divide_exact(num_, g);
      den_ = divide_exact(den_, g);
    }
    fix_sign_and_content();
  }

  void fix_sign_and_content() {
    Rational s = den_.rational_content();
    if (den_.leading_term().second < 0) s = -s;
    if (s != 1) {
      Rational inv = 1 / s;
      num_ *= inv;
      den_ *= inv;
    }
  }

  Polynomial num_;
  Polynomial den_;
};

/// Builds the canonical reduced form of num/den.
inline RationalFunction ratfun_normalize(const Polynomial& num, const Polynomial& den) {
  return {num, den};
}

/// Decides f = g by cross-multiplication; no reduction needed.
inline bool ratfun_equal(const RationalFunction& f, const RationalFunction& g) {
  return f.numerator() * g.denominator() == g.numerator() * f.denominator();
}

}  // namespace zetalab
