#pragma once

// Sparse multivariate polynomials over Q in the fixed indeterminates
// n, k, z, a, b, p. Terms are kept in a map ordered by graded lexicographic
// order (variable order n < k < z < a < b < p); zero coefficients are never
// stored.

#include <zetalab/exact/rational.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace zetalab {

enum class Var : std::uint8_t { n = 0, k, z, a, b, p };

inline constexpr std::size_t kVarCount = 6;
inline constexpr std::array<char, kVarCount> kVarNames{'n', 'k', 'z', 'a', 'b', 'p'};
inline constexpr std::array<Var, kVarCount> kAllVars{Var::n, Var::k, Var::z,
                                                      Var::a, Var::b, Var::p};

inline constexpr std::size_t index_of(Var v) { return static_cast<std::size_t>(v); }
inline constexpr char var_name(Var v) { return kVarNames[index_of(v)]; }

inline std::optional<Var> var_from_name(char c) {
  for (std::size_t i = 0; i < kVarCount; ++i)
    if (kVarNames[i] == c) return static_cast<Var>(i);
  return std::nullopt;
}

struct Monomial {
  std::array<std::uint16_t, kVarCount> exp{};

  static Monomial of(Var v, unsigned e = 1) {
    Monomial m;
    m.exp[index_of(v)] = static_cast<std::uint16_t>(e);
    return m;
  }

  unsigned degree() const {
    unsigned d = 0;
    for (auto e : exp) d += e;
    return d;
  }
  unsigned degree(Var v) const { return exp[index_of(v)]; }

  bool divides(const Monomial& other) const {
    for (std::size_t i = 0; i < kVarCount; ++i)
      if (exp[i] > other.exp[i]) return false;
    return true;
  }

  Monomial operator*(const Monomial& other) const {
    Monomial m;
    for (std::size_t i = 0; i < kVarCount; ++i)
      m.exp[i] = static_cast<std::uint16_t>(exp[i] + other.exp[i]);
    return m;
  }

  // Requires divisor.divides(*this).
  Monomial operator/(const Monomial& divisor) const {
    Monomial m;
    for (std::size_t i = 0; i < kVarCount; ++i)
      m.exp[i] = static_cast<std::uint16_t>(exp[i] - divisor.exp[i]);
    return m;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded lexicographic order: total degree first, ties broken by the
/// exponent of the largest variable (p), then b, a, z, k, n.
struct GradedLex {
  bool operator()(const Monomial& x, const Monomial& y) const {
    unsigned dx = x.degree(), dy = y.degree();
    if (dx != dy) return dx < dy;
    for (std::size_t i = kVarCount; i-- > 0;) {
      if (x.exp[i] != y.exp[i]) return x.exp[i] < y.exp[i];
    }
    return false;
  }
};

class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, GradedLex>;

  Polynomial() = default;
  Polynomial(const Rational& c) {  // NOLINT: constants convert implicitly
    if (c != 0) terms_.emplace(Monomial{}, c);
  }
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT

  static Polynomial variable(Var v) { return monomial(Monomial::of(v), Rational(1)); }
  static Polynomial monomial(const Monomial& m, const Rational& c) {
    Polynomial out;
    if (c != 0) out.terms_.emplace(m, c);
    return out;
  }

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
  }
  Rational constant_value() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
  }
  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Largest term under graded lex. Requires a nonzero polynomial.
  const std::pair<const Monomial, Rational>& leading_term() const {
    if (terms_.empty()) throw Error("leading term of zero polynomial");
    return *terms_.rbegin();
  }

  unsigned degree(Var v) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree(v));
    return d;
  }
  unsigned total_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }
  bool contains(Var v) const {
    for (const auto& [m, c] : terms_)
      if (m.degree(v) > 0) return true;
    return false;
  }
  /// Bit i set iff variable i occurs.
  unsigned variable_mask() const {
    unsigned mask = 0;
    for (const auto& [m, c] : terms_)
      for (std::size_t i = 0; i < kVarCount; ++i)
        if (m.exp[i] > 0) mask |= 1u << i;
    return mask;
  }

  Polynomial operator-() const {
    Polynomial out(*this);
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
  }

  Polynomial& operator+=(const Polynomial& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
  }
  Polynomial& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [m, c] : terms_) c *= s;
    }
    return *this;
  }
  Polynomial& operator*=(const Polynomial& other) {
    *this = *this * other;
    return *this;
  }

  friend Polynomial operator+(Polynomial x, const Polynomial& y) { return x += y; }
  friend Polynomial operator-(Polynomial x, const Polynomial& y) { return x -= y; }
  friend Polynomial operator*(Polynomial x, const Rational& s) { return x *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial x) { return x *= s; }

  friend Polynomial operator*(const Polynomial& x, const Polynomial& y) {
    if (x.is_zero() || y.is_zero()) return {};
    if (x.is_constant()) return y * x.constant_value();
    if (y.is_constant()) return x * y.constant_value();
    unsigned mask = x.variable_mask() | y.variable_mask();
    if ((mask & (mask - 1)) == 0) return multiply_univariate(x, y, mask);
    const Polynomial& small = x.size() <= y.size() ? x : y;
    const Polynomial& large = x.size() <= y.size() ? y : x;
    Polynomial out;
    Rational product;
    for (const auto& [ms, cs] : small.terms_) {
      for (const auto& [ml, cl] : large.terms_) {
        mpq_mul(product.get_mpq_t(), cs.get_mpq_t(), cl.get_mpq_t());
        auto [it, inserted] = out.terms_.try_emplace(ms * ml, product);
        if (!inserted) it->second += product;
      }
    }
    std::erase_if(out.terms_, [](const auto& kv) { return kv.second == 0; });
    return out;
  }

  friend bool operator==(const Polynomial& x, const Polynomial& y) { return x.terms_ == y.terms_; }

  Polynomial pow(unsigned e) const {
    Polynomial out(1), base(*this);
    while (e > 0) {
      if (e & 1u) out *= base;
      e >>= 1u;
      if (e > 0) base *= base;
    }
    return out;
  }

  /// Replaces every occurrence of v by q.
  Polynomial substitute(Var v, const Polynomial& q) const {
    unsigned d = degree(v);
    if (d == 0) return *this;
    std::vector<Polynomial> powers{Polynomial(1)};
    for (unsigned i = 1; i <= d; ++i) powers.push_back(powers.back() * q);
    // Group by exponent of v so each power of q is multiplied once.
    std::vector<Polynomial> groups(d + 1);
    for (const auto& [m, c] : terms_) {
      Monomial rest = m;
      unsigned e = rest.exp[index_of(v)];
      rest.exp[index_of(v)] = 0;
      groups[e].add_term(rest, c);
    }
    Polynomial out;
    for (unsigned e = 0; e <= d; ++e) {
      if (!groups[e].is_zero()) out += groups[e] * powers[e];
    }
    return out;
  }

  /// v -> v + shift
  Polynomial shift(Var v, const Rational& by) const {
    return substitute(v, variable(v) + Polynomial(by));
  }

  /// Partial evaluation v = value.
  Polynomial evaluate(Var v, const Rational& value) const {
    Polynomial out;
    std::vector<Rational> powers{Rational(1)};
    for (const auto& [m, c] : terms_) {
      unsigned e = m.degree(v);
      while (powers.size() <= e) powers.push_back(powers.back() * value);
      Monomial rest = m;
      rest.exp[index_of(v)] = 0;
      out.add_term(rest, c * powers[e]);
    }
    return out;
  }

  /// Full evaluation; `values` is indexed by variable.
  Rational evaluate(const std::array<Rational, kVarCount>& values) const {
    Rational sum(0);
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < kVarCount; ++i)
        if (m.exp[i] > 0) t *= rpow(values[i], m.exp[i]);
      sum += t;
    }
    return sum;
  }

  /// Coefficients c_i (free of v) with *this = sum_i c_i v^i.
  std::vector<Polynomial> coefficients_in(Var v) const {
    std::vector<Polynomial> out(degree(v) + 1);
    for (const auto& [m, c] : terms_) {
      Monomial rest = m;
      unsigned e = rest.exp[index_of(v)];
      rest.exp[index_of(v)] = 0;
      out[e].terms_.emplace(rest, c);
    }
    return out;
  }

  static Polynomial from_coefficients(Var v, const std::vector<Polynomial>& coeffs) {
    Polynomial out;
    for (std::size_t e = 0; e < coeffs.size(); ++e) {
      for (const auto& [m, c] : coeffs[e].terms_) {
        Monomial full = m;
        full.exp[index_of(v)] = static_cast<std::uint16_t>(full.exp[index_of(v)] + e);
        out.add_term(full, c);
      }
    }
    return out;
  }

  /// Leading coefficient with respect to v (a polynomial free of v).
  Polynomial leading_coefficient_in(Var v) const {
    unsigned d = degree(v);
    Polynomial out;
    for (const auto& [m, c] : terms_) {
      if (m.degree(v) != d) continue;
      Monomial rest = m;
      rest.exp[index_of(v)] = 0;
      out.terms_.emplace(rest, c);
    }
    return out;
  }

  /// Positive rational r such that *this / r has coprime integer coefficients.
  Rational rational_content() const {
    if (terms_.empty()) return Rational(1);
    Integer g = 0, l = 1;
    for (const auto& [m, c] : terms_) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    }
    return make_rational(g, l);
  }

  /// Integer-primitive associate with positive leading coefficient.
  Polynomial primitive() const {
    if (terms_.empty()) return {};
    Rational s = rational_content();
    if (leading_term().second < 0) s = -s;
    Polynomial out(*this);
    Rational inv = 1 / s;
    for (auto& [m, c] : out.terms_) c *= inv;
    return out;
  }

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  static Polynomial multiply_univariate(const Polynomial& x, const Polynomial& y, unsigned mask) {
    std::size_t vi = 0;
    while (!(mask & (1u << vi))) ++vi;
    Var v = static_cast<Var>(vi);
    unsigned dx = x.degree(v), dy = y.degree(v);
    std::vector<Rational> a(dx + 1), b(dy + 1), out(dx + dy + 1);
    for (const auto& [m, c] : x.terms_) a[m.exp[vi]] = c;
    for (const auto& [m, c] : y.terms_) b[m.exp[vi]] = c;
    Rational product;
    for (unsigned i = 0; i <= dx; ++i) {
      if (a[i] == 0) continue;
      for (unsigned j = 0; j <= dy; ++j) {
        if (b[j] == 0) continue;
        mpq_mul(product.get_mpq_t(), a[i].get_mpq_t(), b[j].get_mpq_t());
        out[i + j] += product;
      }
    }
    Polynomial result;
    auto hint = result.terms_.end();
    for (unsigned e = 0; e < out.size(); ++e) {
      if (out[e] == 0) continue;
      hint = result.terms_.emplace_hint(result.terms_.end(), Monomial::of(v, e), std::move(out[e]));
    }
    (void)hint;
    return result;
  }

  Terms terms_;
};

inline Polynomial operator+(const Polynomial& x, long c) { return x + Polynomial(c); }
inline Polynomial operator-(const Polynomial& x, long c) { return x - Polynomial(c); }
inline Polynomial operator*(long c, const Polynomial& x) { return x * Rational(c); }
inline Polynomial operator*(const Polynomial& x, long c) { return x * Rational(c); }

inline std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational mag = rabs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string vars;
    for (std::size_t i = 0; i < kVarCount; ++i) {
      if (m.exp[i] == 0) continue;
      if (!vars.empty()) vars += "*";
      vars += kVarNames[i];
      if (m.exp[i] > 1) vars += "^" + std::to_string(m.exp[i]);
    }
    if (vars.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += vars;
    } else {
      out += mag.get_str() + "*" + vars;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Division and gcd.

/// Quotient f / g when g divides f exactly; nullopt otherwise.
inline std::optional<Polynomial> try_divide(const Polynomial& f, const Polynomial& g) {
  if (g.is_zero()) throw Error("division by zero polynomial");
  if (g.is_constant()) return f * (1 / g.constant_value());
  Polynomial rem = f, quo;
  const auto& [lm, lc] = g.leading_term();
  Rational inv = 1 / lc;
  while (!rem.is_zero()) {
    const auto& [rm, rc] = rem.leading_term();
    if (!lm.divides(rm)) return std::nullopt;
    Polynomial step = Polynomial::monomial(rm / lm, rc * inv);
    quo += step;
    rem -= step * g;
  }
  return quo;
}

inline Polynomial divide_exact(const Polynomial& f, const Polynomial& g) {
  auto q = try_divide(f, g);
  if (!q) throw Error("polynomial division is not exact");
  return std::move(*q);
}

namespace detail {

inline Var highest_variable(unsigned mask) {
  std::size_t i = kVarCount;
  while (i-- > 0)
    if (mask & (1u << i)) return static_cast<Var>(i);
  throw Error("no variable present");
}

/// Pseudo-remainder prem(f, g) = lc(g)^(deg f - deg g + 1) * f mod g in v.
inline Polynomial pseudo_remainder(Polynomial f, const Polynomial& g, Var v) {
  unsigned dg = g.degree(v);
  if (dg == 0) return {};
  Polynomial lcg = g.leading_coefficient_in(v);
  unsigned df = f.degree(v);
  if (df < dg) return f;
  unsigned steps = df - dg + 1;
  while (!f.is_zero() && f.degree(v) >= dg) {
    unsigned d = f.degree(v);
    Polynomial lcf = f.leading_coefficient_in(v);
    f = lcg * f - lcf * Polynomial::monomial(Monomial::of(v, d - dg), Rational(1)) * g;
    --steps;
  }
  if (steps > 0 && !f.is_zero()) f *= lcg.pow(steps);
  return f;
}

/// Dense coefficients of f in v after substituting `point` for every other
/// variable.
inline std::vector<Rational> univariate_image(const Polynomial& f, Var v, const std::array<Rational, kVarCount>& point) {
  std::vector<Rational> out(f.degree(v) + 1);
  auto values = point;
  values[index_of(v)] = 1;
  for (const auto& [m, c] : f.terms()) {
    Rational t = c;
    for (std::size_t i = 0; i < kVarCount; ++i)
      if (i != index_of(v) && m.exp[i] > 0) t *= rpow(values[i], m.exp[i]);
    out[m.exp[index_of(v)]] += t;
  }
  return out;
}

inline void trim(std::vector<Rational>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

/// Degree of the gcd of two dense univariate polynomials over Q.
inline std::size_t univariate_gcd_degree(std::vector<Rational> a, std::vector<Rational> b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    while (a.size() >= b.size()) {
      Rational q = a.back() / b.back();
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= q * b[i];
      a.pop_back();
      trim(a);
      if (a.size() < b.size()) break;
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

/// True when f and g are certified to have a gcd free of v: at a point
/// where neither leading coefficient in v vanishes, the degree of the image
/// gcd bounds the degree in v of the true gcd from above.
inline bool gcd_free_of(const Polynomial& f, const Polynomial& g, Var v) {
  static const long kPoints[][kVarCount] = {{3, 5, 7, 11, 13, 17}, {-2, 9, -4, 6, -8, 19}, {23, -6, 2, -15, 4, 31}};
  Polynomial lf = f.leading_coefficient_in(v), lg = g.leading_coefficient_in(v);
  for (const auto& pt : kPoints) {
    std::array<Rational, kVarCount> point;
    for (std::size_t i = 0; i < kVarCount; ++i) point[i] = pt[i];
    if (lf.evaluate(point) == 0 || lg.evaluate(point) == 0) continue;
    return univariate_gcd_degree(univariate_image(f, v, point), univariate_image(g, v, point)) == 0;
  }
  return false;
}

}  // namespace detail

Polynomial gcd(const Polynomial& f, const Polynomial& g);

/// gcd of the coefficients of f with respect to v.
inline Polynomial content_in(const Polynomial& f, Var v) {
  Polynomial acc;
  for (const auto& c : f.coefficients_in(v)) {
    if (c.is_zero()) continue;
    acc = acc.is_zero() ? c.primitive() : gcd(acc, c);
    if (acc.is_constant()) return Polynomial(1);
  }
  return acc.is_zero() ? Polynomial(1) : acc;
}

inline Polynomial primitive_in(const Polynomial& f, Var v) {
  if (f.is_zero()) return f;
  return divide_exact(f, content_in(f, v)).primitive();
}

/// Greatest common divisor over Q, normalized to an integer-primitive
/// polynomial with positive leading coefficient. Content-primitive recursion:
/// split off the content in the main variable, run a primitive PRS on the
/// primitive parts, recurse for the contents.
inline Polynomial gcd(const Polynomial& f, const Polynomial& g) {
  if (f.is_zero()) return g.primitive();
  if (g.is_zero()) return f.primitive();
  if (f.is_constant() || g.is_constant()) return Polynomial(1);
  Var v = detail::highest_variable(f.variable_mask() | g.variable_mask());
  if (!f.contains(v)) return gcd(f, content_in(g, v));
  if (!g.contains(v)) return gcd(content_in(f, v), g);

  Polynomial cf = content_in(f, v), cg = content_in(g, v);
  Polynomial c = gcd(cf, cg);
  if (detail::gcd_free_of(f, g, v)) return c;
  Polynomial a = divide_exact(f, cf).primitive();
  Polynomial b = divide_exact(g, cg).primitive();
  if (a.degree(v) < b.degree(v)) std::swap(a, b);
  // Subresultant PRS: every division below is exact.
  Polynomial g_s(1), h_s(1);
  while (true) {
    unsigned delta = a.degree(v) - b.degree(v);
    Polynomial r = detail::pseudo_remainder(a, b, v);
    if (r.is_zero()) break;
    if (!r.contains(v)) return c;
    a = std::move(b);
    b = divide_exact(r, g_s * h_s.pow(delta));
    g_s = a.leading_coefficient_in(v);
    if (delta > 0) h_s = divide_exact(g_s.pow(delta), h_s.pow(delta - 1));
  }
  return (c * primitive_in(b, v)).primitive();
}

}  // namespace zetalab
