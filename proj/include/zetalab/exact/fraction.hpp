#pragma once

// Unreduced fractions whose denominators are kept as lists of factors. The
// identity checks and WZ term sums add hundreds of terms whose denominators
// share almost all of their factors; keeping the factors separate lets the
// common denominator be formed by bookkeeping instead of repeated gcds.

#include <zetalab/exact/rational_function.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace zetalab {

/// numerator / (product of denominator factors), not reduced.
class FactoredFraction {
 public:
  FactoredFraction() = default;
  FactoredFraction(Polynomial numerator, std::vector<Polynomial> denominator = {})
      : num_(std::move(numerator)) {
    for (auto& f : denominator) push_factor(std::move(f));
  }

  const Polynomial& numerator() const { return num_; }
  const std::vector<Polynomial>& denominator_factors() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  Polynomial expanded_denominator() const {
    Polynomial out(1);
    for (const auto& f : den_) out *= f;
    return out;
  }

  void multiply(const Polynomial& num, const Polynomial& den) {
    num_ *= num;
    push_factor(den);
  }
  void scale(const Rational& s) { num_ *= s; }

  RationalFunction reduce() const { return {num_, expanded_denominator()}; }

  FactoredFraction substitute(Var v, const Polynomial& q) const {
    FactoredFraction out(num_.substitute(v, q));
    for (const auto& f : den_) out.push_factor(f.substitute(v, q));
    return out;
  }

  friend bool equal_value(const FactoredFraction& x, const FactoredFraction& y) {
    return x.num_ * y.expanded_denominator() == y.num_ * x.expanded_denominator();
  }

 private:
  void push_factor(Polynomial f) {
    if (f.is_zero()) throw Error("division by zero polynomial");
    if (f.is_constant()) {
      num_ *= 1 / f.constant_value();
    } else {
      den_.push_back(std::move(f));
    }
  }

  Polynomial num_;
  std::vector<Polynomial> den_;
};

/// Sum of terms whose denominators form a growing chain D_1 | D_2 | ...,
/// each D_{i+1} = D_i * (new factors). Adding a term costs one
/// multiplication of the running numerator per new factor.
class ChainSum {
 public:
  void extend_denominator(const Polynomial& factor) {
    if (factor.is_zero()) throw Error("division by zero polynomial");
    num_ *= factor;
    den_.push_back(factor);
  }
  /// Adds term_numerator / (current chain product).
  void add(const Polynomial& term_numerator) { num_ += term_numerator; }

  const Polynomial& numerator() const { return num_; }
  FactoredFraction value() const { return {num_, den_}; }

 private:
  Polynomial num_;
  std::vector<Polynomial> den_;
};

/// Adds fractions over the least common multiple of their factored
/// denominators. Factors are matched after normalization to integer-primitive
/// form with positive leading coefficient.
inline FactoredFraction lcm_sum(const std::vector<FactoredFraction>& terms) {
  struct Entry {
    Polynomial factor;
    int multiplicity = 0;
  };
  using Multiset = std::map<std::string, Entry>;
  std::vector<Multiset> per_term(terms.size());
  std::vector<Polynomial> scaled(terms.size());
  Multiset lcm;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    Polynomial num = terms[i].numerator();
    for (const auto& f : terms[i].denominator_factors()) {
      Polynomial prim = f.primitive();
      num *= prim.leading_term().second / f.leading_term().second;
      auto& e = per_term[i][prim.to_string()];
      e.factor = prim;
      ++e.multiplicity;
    }
    scaled[i] = std::move(num);
    for (const auto& [key, e] : per_term[i]) {
      auto& l = lcm[key];
      l.factor = e.factor;
      l.multiplicity = std::max(l.multiplicity, e.multiplicity);
    }
  }
  Polynomial total;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (scaled[i].is_zero()) continue;
    Polynomial cofactor(1);
    for (const auto& [key, l] : lcm) {
      auto it = per_term[i].find(key);
      int have = it == per_term[i].end() ? 0 : it->second.multiplicity;
      for (int r = have; r < l.multiplicity; ++r) cofactor *= l.factor;
    }
    total += scaled[i] * cofactor;
  }
  std::vector<Polynomial> den;
  for (const auto& [key, l] : lcm)
    for (int r = 0; r < l.multiplicity; ++r) den.push_back(l.factor);
  return {std::move(total), std::move(den)};
}

}  // namespace zetalab
