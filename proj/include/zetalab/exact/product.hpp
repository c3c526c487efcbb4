#pragma once

// Rational functions kept as scalar * prod f_i^(e_i) with integer-primitive
// factors f_i. Multiplying such forms cancels equal factors by bookkeeping,
// which is what makes long products of shift quotients cheap.

#include <zetalab/exact/rational_function.hpp>

#include <map>
#include <string>
#include <utility>

namespace zetalab {

class ProductForm {
 public:
  struct Factor {
    Polynomial poly;  // integer-primitive, positive leading coefficient
    int exponent = 0;
  };

  ProductForm() : scalar_(1), numerator_(1) {}
  ProductForm(const Rational& c) : scalar_(c), numerator_(1) {}  // NOLINT

  /// Single-factor view of a rational function (num and den become one factor each).
  static ProductForm from(const RationalFunction& r) {
    ProductForm out;
    out.multiply_factor(r.numerator(), 1);
    out.multiply_factor(r.denominator(), -1);
    return out;
  }

  bool is_zero() const { return scalar_ == 0; }
  const Rational& scalar() const { return scalar_; }
  const std::map<std::string, Factor>& factors() const { return factors_; }

  /// Product of the factors with positive exponent (scalar excluded), kept
  /// expanded and updated on every multiplication.
  const Polynomial& numerator_product() const { return numerator_; }

  /// Multiplies by f^e. A constant f folds into the scalar; a zero f with
  /// e > 0 makes the whole form zero; a zero f with e < 0 throws.
  void multiply_factor(const Polynomial& f, int e) {
    if (e == 0 || is_zero()) {
      if (e < 0 && f.is_zero()) throw Error("division by zero polynomial");
      return;
    }
    if (f.is_zero()) {
      if (e < 0) throw Error("division by zero polynomial");
      set_zero();
      return;
    }
    if (f.is_constant()) {
      scalar_ *= rpow(f.constant_value(), e);
      return;
    }
    Polynomial prim = f.primitive();
    scalar_ *= rpow(f.leading_term().second / prim.leading_term().second, e);
    std::string key = prim.to_string();
    auto it = factors_.find(key);
    int before = it == factors_.end() ? 0 : it->second.exponent;
    int after = before + e;
    update_numerator(prim, std::max(before, 0), std::max(after, 0));
    if (after == 0) {
      factors_.erase(it);
    } else if (it == factors_.end()) {
      factors_.emplace(std::move(key), Factor{std::move(prim), after});
    } else {
      it->second.exponent = after;
    }
  }

  ProductForm& operator*=(const ProductForm& other) {
    if (is_zero()) return *this;
    if (other.is_zero()) {
      set_zero();
      return *this;
    }
    scalar_ *= other.scalar_;
    for (const auto& [key, f] : other.factors_) multiply_factor(f.poly, f.exponent);
    return *this;
  }
  friend ProductForm operator*(ProductForm x, const ProductForm& y) { return x *= y; }

  ProductForm& operator*=(const Rational& c) {
    if (c == 0) {
      set_zero();
    } else {
      scalar_ *= c;
    }
    return *this;
  }

  ProductForm inverse() const {
    if (is_zero()) throw Error("division by zero polynomial");
    ProductForm out(1 / scalar_);
    for (const auto& [key, f] : factors_) out.multiply_factor(f.poly, -f.exponent);
    return out;
  }

  Polynomial denominator_product() const {
    Polynomial d(1);
    for (const auto& [key, f] : factors_)
      if (f.exponent < 0) d *= f.poly.pow(static_cast<unsigned>(-f.exponent));
    return d;
  }

  RationalFunction expand() const {
    if (is_zero()) return {};
    return {numerator_ * scalar_, denominator_product()};
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string num = scalar_.get_num().get_str(), den = scalar_.get_den().get_str();
    for (const auto& [key, f] : factors_) {
      std::string& side = f.exponent > 0 ? num : den;
      side += "*(" + key + ")";
      int e = f.exponent > 0 ? f.exponent : -f.exponent;
      if (e > 1) side += "^" + std::to_string(e);
    }
    return den == "1" ? num : num + "/(" + den + ")";
  }

 private:
  void set_zero() {
    scalar_ = 0;
    factors_.clear();
    numerator_ = Polynomial(1);
  }

  void update_numerator(const Polynomial& f, int before, int after) {
    if (after > before) {
      numerator_ *= f.pow(static_cast<unsigned>(after - before));
    } else if (after < before) {
      numerator_ = divide_exact(numerator_, f.pow(static_cast<unsigned>(before - after)));
    }
  }

  Rational scalar_;
  std::map<std::string, Factor> factors_;
  Polynomial numerator_;
};

}  // namespace zetalab
