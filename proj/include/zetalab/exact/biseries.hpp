#pragma once

#include <zetalab/exact/rational.hpp>

#include <string>
#include <vector>

namespace zetalab {

/// Power series in a, b truncated at total degree D: only coefficients of
/// a^i b^j with i + j <= D are stored; arithmetic discards anything beyond.
class TruncatedBiSeries {
 public:
  explicit TruncatedBiSeries(unsigned order = 8) : order_(order), coeffs_(triangle(order)) {}

  static TruncatedBiSeries constant(const Rational& c, unsigned order) {
    TruncatedBiSeries s(order);
    s.coeffs_[0] = c;
    return s;
  }
  /// c * a^i * b^j (zero if beyond the order).
  static TruncatedBiSeries monomial(const Rational& c, unsigned i, unsigned j, unsigned order) {
    TruncatedBiSeries s(order);
    if (i + j <= order) s.coeffs_[index(i, j)] = c;
    return s;
  }

  unsigned order() const { return order_; }

  /// Coefficient of a^i b^j (zero beyond the truncation).
  Rational coefficient(unsigned i, unsigned j) const {
    return i + j <= order_ ? coeffs_[index(i, j)] : Rational(0);
  }
  void set(unsigned i, unsigned j, const Rational& c) {
    if (i + j > order_) throw Error("coefficient index beyond truncation order");
    coeffs_[index(i, j)] = c;
  }

  TruncatedBiSeries& operator+=(const TruncatedBiSeries& other) {
    check_order(other);
    for (std::size_t t = 0; t < coeffs_.size(); ++t) coeffs_[t] += other.coeffs_[t];
    return *this;
  }
  TruncatedBiSeries& operator-=(const TruncatedBiSeries& other) {
    check_order(other);
    for (std::size_t t = 0; t < coeffs_.size(); ++t) coeffs_[t] -= other.coeffs_[t];
    return *this;
  }
  TruncatedBiSeries& operator*=(const Rational& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  friend TruncatedBiSeries operator+(TruncatedBiSeries x, const TruncatedBiSeries& y) { return x += y; }
  friend TruncatedBiSeries operator-(TruncatedBiSeries x, const TruncatedBiSeries& y) { return x -= y; }
  friend TruncatedBiSeries operator*(TruncatedBiSeries x, const Rational& s) { return x *= s; }

  friend TruncatedBiSeries operator*(const TruncatedBiSeries& x, const TruncatedBiSeries& y) {
    x.check_order(y);
    const unsigned d = x.order_;
    TruncatedBiSeries out(d);
    Rational product;
    for (unsigned i1 = 0; i1 <= d; ++i1) {
      for (unsigned j1 = 0; i1 + j1 <= d; ++j1) {
        const Rational& c1 = x.coeffs_[index(i1, j1)];
        if (c1 == 0) continue;
        for (unsigned i2 = 0; i1 + j1 + i2 <= d; ++i2) {
          for (unsigned j2 = 0; i1 + j1 + i2 + j2 <= d; ++j2) {
            const Rational& c2 = y.coeffs_[index(i2, j2)];
            if (c2 == 0) continue;
            mpq_mul(product.get_mpq_t(), c1.get_mpq_t(), c2.get_mpq_t());
            out.coeffs_[index(i1 + i2, j1 + j2)] += product;
          }
        }
      }
    }
    return out;
  }

  friend bool operator==(const TruncatedBiSeries&, const TruncatedBiSeries&) = default;

  /// Evaluates the stored polynomial at (a, b).
  Rational evaluate(const Rational& a, const Rational& b) const {
    Rational sum(0);
    for (unsigned i = 0; i <= order_; ++i)
      for (unsigned j = 0; i + j <= order_; ++j)
        if (coeffs_[index(i, j)] != 0) sum += coeffs_[index(i, j)] * rpow(a, i) * rpow(b, j);
    return sum;
  }

  std::string to_string() const {
    std::string out;
    for (unsigned d = 0; d <= order_; ++d) {
      for (unsigned i = d + 1; i-- > 0;) {
        const Rational& c = coeffs_[index(i, d - i)];
        if (c == 0) continue;
        if (!out.empty()) out += " + ";
        out += "(" + c.get_str() + ")";
        if (i > 0) out += "*a^" + std::to_string(i);
        if (d - i > 0) out += "*b^" + std::to_string(d - i);
      }
    }
    return out.empty() ? "0" : out;
  }

 private:
  static std::size_t triangle(unsigned d) { return static_cast<std::size_t>(d + 1) * (d + 2) / 2; }
  // Coefficients grouped by total degree t = i + j.
  static std::size_t index(unsigned i, unsigned j) { return triangle(i + j) - (i + j + 1) + j; }

  void check_order(const TruncatedBiSeries& other) const {
    if (order_ != other.order_) throw Error("truncation orders differ");
  }

  unsigned order_;
  std::vector<Rational> coeffs_;
};

inline TruncatedBiSeries biseries_mul(const TruncatedBiSeries& f, const TruncatedBiSeries& g) { return f * g; }

/// Expansion of 1 / (j^2 - a_weight*a*j - b_weight*b^2) to order D:
/// (1/j^2) * sum_t ((a_weight*a*j + b_weight*b^2) / j^2)^t.
inline TruncatedBiSeries biseries_invert_factor(unsigned j, const Rational& a_weight, const Rational& b_weight,
                                                unsigned order) {
  if (j == 0) throw Error("biseries_invert_factor: j must be positive");
  Rational inv_j2 = make_rational(1, static_cast<long>(j) * static_cast<long>(j));
  TruncatedBiSeries u(order);
  if (order >= 1) u.set(1, 0, a_weight * static_cast<long>(j) * inv_j2);
  if (order >= 2) u.set(0, 2, b_weight * inv_j2);
  // Every nonzero term of u has degree >= 1, so u^t vanishes for t > order.
  TruncatedBiSeries sum = TruncatedBiSeries::constant(Rational(1), order);
  TruncatedBiSeries power = TruncatedBiSeries::constant(Rational(1), order);
  for (unsigned t = 1; t <= order; ++t) {
    power = power * u;
    sum += power;
  }
  return sum * inv_j2;
}

}  // namespace zetalab
