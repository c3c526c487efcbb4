#pragma once

// Hypergeometric terms in (n, k) with a free parameter z, given by their
// shift quotients and one base value, and WZ pairs (F, G = R F).

#include <zetalab/exact.hpp>

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace zetalab {

struct HypergeometricTerm {
  std::string name;
  RationalFunction shift_n;  // T(n+1,k) / T(n,k)
  RationalFunction shift_k;  // T(n,k+1) / T(n,k)
  long n0 = 1, k0 = 1;
  RationalFunction base;  // T(n0,k0), a function of z
  // Factored views used for evaluation along paths.
  ProductForm shift_n_form, shift_k_form, base_form;
};

struct WZPair {
  std::string name;
  HypergeometricTerm F;
  std::optional<RationalFunction> certificate;  // R with G = R F
  ProductForm certificate_form;
};

namespace detail {

inline std::string trim_copy(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline long parse_long(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw Error("");
    return v;
  } catch (const std::exception&) {
    throw Error("bad " + what + ": '" + s + "'");
  }
}

}  // namespace detail

inline HypergeometricTerm make_term(std::string name, std::string_view shift_n, std::string_view shift_k, long n0,
                                    long k0, std::string_view base) {
  HypergeometricTerm t;
  t.name = std::move(name);
  t.shift_n_form = parse_product(shift_n);
  t.shift_k_form = parse_product(shift_k);
  t.base_form = parse_product(base);
  t.shift_n = t.shift_n_form.expand();
  t.shift_k = t.shift_k_form.expand();
  t.base = t.base_form.expand();
  t.n0 = n0;
  t.k0 = k0;
  if (t.base.variable_mask() & ~(1u << index_of(Var::z))) throw Error("base value may only depend on z");
  return t;
}

/// Parses the pair file format: lines `key=value` with keys name, shiftN,
/// shiftK, base=(n0,k0,expr) and the optional certificate; '#' starts a comment.
inline WZPair parse_pair(std::string_view text, std::string default_name = "pair") {
  std::string name = std::move(default_name), shift_n, shift_k, base, certificate;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string body = detail::trim_copy(line);
    if (body.empty()) continue;
    auto eq = body.find('=');
    if (eq == std::string::npos) throw Error("line " + std::to_string(line_no) + ": expected key=value");
    std::string key = detail::trim_copy(body.substr(0, eq)), value = detail::trim_copy(body.substr(eq + 1));
    if (key == "name") {
      name = value;
    } else if (key == "shiftN") {
      shift_n = value;
    } else if (key == "shiftK") {
      shift_k = value;
    } else if (key == "base") {
      base = value;
    } else if (key == "certificate") {
      certificate = value;
    } else {
      throw Error("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  if (shift_n.empty() || shift_k.empty() || base.empty()) throw Error("pair file needs shiftN, shiftK and base");
  if (base.size() < 2 || base.front() != '(' || base.back() != ')') throw Error("base must be (n0,k0,expr)");
  std::string inner = base.substr(1, base.size() - 2);
  auto c1 = inner.find(',');
  auto c2 = c1 == std::string::npos ? c1 : inner.find(',', c1 + 1);
  if (c2 == std::string::npos) throw Error("base must be (n0,k0,expr)");
  long n0 = detail::parse_long(detail::trim_copy(inner.substr(0, c1)), "base n0");
  long k0 = detail::parse_long(detail::trim_copy(inner.substr(c1 + 1, c2 - c1 - 1)), "base k0");
  WZPair pair;
  pair.name = name;
  pair.F = make_term(name, shift_n, shift_k, n0, k0, inner.substr(c2 + 1));
  if (!certificate.empty()) {
    pair.certificate_form = parse_product(certificate);
    pair.certificate = pair.certificate_form.expand();
  }
  return pair;
}

// ---------------------------------------------------------------------------
// Symbolic checks

namespace detail {

inline Polynomial shifted(const Polynomial& p, Var v) { return p.shift(v, Rational(1)); }

}  // namespace detail

/// shiftN(n,k+1) shiftK(n,k) == shiftK(n+1,k) shiftN(n,k), compared after
/// clearing denominators.
inline bool shifts_commute(const HypergeometricTerm& t) {
  const Polynomial &A = t.shift_n.numerator(), &B = t.shift_n.denominator();
  const Polynomial &C = t.shift_k.numerator(), &D = t.shift_k.denominator();
  using detail::shifted;
  return shifted(A, Var::k) * C * shifted(D, Var::n) * B == shifted(C, Var::n) * A * shifted(B, Var::k) * D;
}

struct WZReport {
  bool commutation = false;
  bool pass = false;
  Polynomial residual;  // zero exactly when the WZ relation holds
};

/// Checks shiftN - 1 == R(n,k+1) shiftK - R(n,k) as a rational-function
/// identity. With shiftN = A/B, shiftK = C/D, R = E/F and R(n,k+1) = E1/F1 the
/// residual is (A - B) F1 D F - B (E1 C F - E F1 D).
inline WZReport wz_check(const WZPair& pair) {
  if (!pair.certificate) throw Error(pair.name + ": no certificate");
  if (!shifts_commute(pair.F)) throw Error(pair.name + ": incompatible shift quotients (mixed shifts do not commute)");
  const Polynomial &A = pair.F.shift_n.numerator(), &B = pair.F.shift_n.denominator();
  const Polynomial &C = pair.F.shift_k.numerator(), &D = pair.F.shift_k.denominator();
  const Polynomial &E = pair.certificate->numerator(), &F = pair.certificate->denominator();
  Polynomial E1 = detail::shifted(E, Var::k), F1 = detail::shifted(F, Var::k);
  WZReport report;
  report.commutation = true;
  report.residual = (A - B) * F1 * D * F - B * (E1 * C * F - E * F1 * D);
  report.pass = report.residual.is_zero();
  return report;
}

// ---------------------------------------------------------------------------
// Evaluation along lattice paths

enum class PathOrder { KFirst, NFirst, Auto };

struct TermValue {
  long n = 0, k = 0;
  ProductForm value;  // function of z, or a constant when z was instantiated
  PathOrder path = PathOrder::KFirst;

  RationalFunction rational_function() const { return value.expand(); }
};

namespace detail {

/// Substitutes the lattice point (and z, when given) into every factor.
/// A vanishing denominator factor is a pole.
inline ProductForm instantiate(const ProductForm& q, long n, long k, const std::optional<Rational>& z,
                               const std::string& what) {
  ProductForm out(q.scalar());
  for (const auto& [key, f] : q.factors()) {
    Polynomial p = f.poly.evaluate(Var::n, Rational(n)).evaluate(Var::k, Rational(k));
    if (z) p = p.evaluate(Var::z, *z);
    if (p.is_zero() && f.exponent < 0)
      throw PoleError("pole in " + what + " at (n,k)=(" + std::to_string(n) + "," + std::to_string(k) + "): factor " +
                      key + " vanishes");
    out.multiply_factor(p, f.exponent);
  }
  return out;
}

}  // namespace detail

/// Walks a term across the lattice one shift at a time.
class TermWalker {
 public:
  TermWalker(const HypergeometricTerm& t, std::optional<Rational> z)
      : t_(t), z_(std::move(z)), n_(t.n0), k_(t.k0), value_(t.base_form) {
    if (z_) value_ = detail::instantiate(t.base_form, n_, k_, z_, t.name + " base");
  }

  long n() const { return n_; }
  long k() const { return k_; }
  const ProductForm& value() const { return value_; }

  void step_k(int dir) {
    if (dir > 0) {
      value_ *= detail::instantiate(t_.shift_k_form, n_, k_, z_, t_.name + " shiftK");
      ++k_;
    } else {
      // T(n,k-1) = T(n,k) / shiftK(n,k-1)
      ProductForm q = detail::instantiate(t_.shift_k_form, n_, k_ - 1, z_, t_.name + " shiftK");
      if (q.is_zero()) throw PoleError(t_.name + ": backward step through a zero of shiftK at k=" + std::to_string(k_ - 1));
      value_ *= q.inverse();
      --k_;
    }
  }

  void step_n(int dir) {
    if (dir > 0) {
      value_ *= detail::instantiate(t_.shift_n_form, n_, k_, z_, t_.name + " shiftN");
      ++n_;
    } else {
      ProductForm q = detail::instantiate(t_.shift_n_form, n_ - 1, k_, z_, t_.name + " shiftN");
      if (q.is_zero()) throw PoleError(t_.name + ": backward step through a zero of shiftN at n=" + std::to_string(n_ - 1));
      value_ *= q.inverse();
      --n_;
    }
  }

  void move_to(long n, long k, PathOrder order) {
    auto along_k = [&] {
      while (k_ < k) step_k(1);
      while (k_ > k) step_k(-1);
    };
    auto along_n = [&] {
      while (n_ < n) step_n(1);
      while (n_ > n) step_n(-1);
    };
    if (order == PathOrder::NFirst) {
      along_n();
      along_k();
    } else {
      along_k();
      along_n();
    }
  }

 private:
  const HypergeometricTerm& t_;
  std::optional<Rational> z_;
  long n_, k_;
  ProductForm value_;
};

/// Value of the term at (n, k). The canonical path moves in k first, then in
/// n; under PathOrder::Auto a pole on that path falls back to the n-first path.
inline TermValue term_eval(const HypergeometricTerm& t, long n, long k, PathOrder order = PathOrder::Auto,
                           const std::optional<Rational>& z = std::nullopt) {
  auto run = [&](PathOrder o) {
    TermWalker w(t, z);
    w.move_to(n, k, o);
    return TermValue{n, k, w.value(), o};
  };
  if (order != PathOrder::Auto) return run(order);
  try {
    return run(PathOrder::KFirst);
  } catch (const PoleError& first) {
    try {
      return run(PathOrder::NFirst);
    } catch (const PoleError&) {
      throw first;
    }
  }
}

/// G(n,k) = R(n,k) F(n,k).
inline TermValue certificate_eval(const WZPair& pair, long n, long k, const std::optional<Rational>& z = std::nullopt) {
  if (!pair.certificate) throw Error(pair.name + ": no certificate");
  TermValue f = term_eval(pair.F, n, k, PathOrder::Auto, z);
  if (f.value.is_zero()) {
    // Still reject a pole of R at this point.
    detail::instantiate(pair.certificate_form, n, k, z, pair.name + " certificate");
    return f;
  }
  f.value *= detail::instantiate(pair.certificate_form, n, k, z, pair.name + " certificate");
  return f;
}

// ---------------------------------------------------------------------------
// Sums

inline FactoredFraction to_fraction(const ProductForm& x) {
  if (x.is_zero()) return FactoredFraction(Polynomial());
  std::vector<Polynomial> den;
  for (const auto& [key, f] : x.factors())
    for (int r = 0; r < -f.exponent; ++r) den.push_back(f.poly);
  return {x.numerator_product() * x.scalar(), std::move(den)};
}

/// Adds product forms over a common denominator that only grows: a new
/// denominator factor multiplies the running numerator once, and terms
/// missing some factors of the running denominator are scaled by them.
class ProductChainSum {
 public:
  void add(const ProductForm& t) {
    if (t.is_zero()) return;
    for (const auto& [key, f] : t.factors()) {
      if (f.exponent >= 0) continue;
      auto& e = den_[key];
      if (e.multiplicity == 0) e.factor = f.poly;
      for (int r = e.multiplicity; r < -f.exponent; ++r) num_ *= f.poly;
      e.multiplicity = std::max(e.multiplicity, -f.exponent);
    }
    Polynomial term = t.numerator_product() * t.scalar();
    for (const auto& [key, e] : den_) {
      auto it = t.factors().find(key);
      int have = it == t.factors().end() || it->second.exponent > 0 ? 0 : -it->second.exponent;
      for (int r = have; r < e.multiplicity; ++r) term *= e.factor;
    }
    num_ += term;
  }

  FactoredFraction value() const {
    std::vector<Polynomial> den;
    for (const auto& [key, e] : den_)
      for (int r = 0; r < e.multiplicity; ++r) den.push_back(e.factor);
    return {num_, std::move(den)};
  }

 private:
  struct Entry {
    Polynomial factor;
    int multiplicity = 0;
  };
  Polynomial num_;
  std::map<std::string, Entry> den_;
};

/// sum_{k=k_lo}^{k_hi} T(n,k): the first term by term_eval, the rest by k-steps.
inline FactoredFraction row_sum(const HypergeometricTerm& t, long n, long k_lo, long k_hi,
                                const std::optional<Rational>& z = std::nullopt) {
  ProductChainSum sum;
  if (k_hi < k_lo) return sum.value();
  TermValue first = term_eval(t, n, k_lo, PathOrder::Auto, z);
  TermWalker w(t, z);
  w.move_to(n, k_lo, first.path);
  sum.add(w.value());
  while (w.k() < k_hi) {
    w.step_k(1);
    sum.add(w.value());
  }
  return sum.value();
}

inline bool equals(const FactoredFraction& x, const RationalFunction& r) {
  return x.numerator() * r.denominator() == r.numerator() * x.expanded_denominator();
}

struct TelescopeResult {
  long n = 0;
  FactoredFraction sum;  // S_n = sum_{k=1}^{n} F(n,k)
  // S_{n+1} - S_n computed directly and as G(n,n+2) - G(n,1) + F(n,n+1).
  std::optional<FactoredFraction> direct_increment, telescoped_increment;
  bool increments_equal = false;
};

inline FactoredFraction fraction_difference(const FactoredFraction& x, const FactoredFraction& y) {
  FactoredFraction neg_y(-y.numerator(), y.denominator_factors());
  return lcm_sum({x, neg_y});
}

inline TelescopeResult telescope_sum(const WZPair& pair, long n, bool with_increment = true) {
  if (n < 1) throw Error("telescope_sum: n must be positive");
  TelescopeResult r;
  r.n = n;
  r.sum = row_sum(pair.F, n, 1, n);
  if (with_increment) {
    if (!pair.certificate) throw Error(pair.name + ": no certificate");
    FactoredFraction next = row_sum(pair.F, n + 1, 1, n + 1);
    r.direct_increment = fraction_difference(next, r.sum);
    // sum_{k=1}^{n+1} (F(n+1,k) - F(n,k)) = G(n,n+2) - G(n,1)
    r.telescoped_increment = lcm_sum({to_fraction(certificate_eval(pair, n, n + 2).value),
                                      to_fraction(ProductForm(-1) * certificate_eval(pair, n, 1).value),
                                      to_fraction(term_eval(pair.F, n, n + 1).value)});
    r.increments_equal = equal_value(*r.direct_increment, *r.telescoped_increment);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Infinite sums over k >= n at an instantiated z

struct TailTrace {
  long n = 0;
  Rational z;
  std::vector<Rational> partial_sums;  // S_k for k = n..k_max
  std::vector<Rational> deviations;    // |S_k - 1|
  bool geometric_decay = false;        // ratio <= 1/2 beyond k = 2n + 4
  Rational g_first;                    // G(n,n)
  Rational g_last;                     // G(n,k_max + 1)
};

inline TailTrace infinite_tail_check(const WZPair& pair, long n, const Rational& z, long k_max) {
  if (n < 1) throw Error("infinite_tail_check: n must be positive");
  if (k_max < n) throw Error("infinite_tail_check: k_max must be at least n");
  for (long j = 1; j <= k_max + 1; ++j) {
    if (Rational(j * j) == z * z) throw PoleError("pole: factor j^2 - z^2 at j=" + std::to_string(j));
    if (j != n && Rational(j - n) + z == 0) throw PoleError("pole: factor j - n + z at j=" + std::to_string(j));
  }
  TailTrace trace;
  trace.n = n;
  trace.z = z;
  auto as_rational = [](const ProductForm& v) { return v.is_zero() ? Rational(0) : v.scalar(); };
  TermValue first = term_eval(pair.F, n, n, PathOrder::Auto, z);
  TermWalker w(pair.F, z);
  w.move_to(n, n, first.path);
  Rational s(0);
  while (true) {
    s += as_rational(w.value());
    trace.partial_sums.push_back(s);
    trace.deviations.push_back(rabs(s - 1));
    if (w.k() == k_max) break;
    w.step_k(1);
  }
  std::size_t start = static_cast<std::size_t>(std::max(0L, 2 * n + 4 - n));
  bool decay = start + 1 < trace.deviations.size();
  for (std::size_t i = start; i + 1 < trace.deviations.size(); ++i) {
    const Rational& a = trace.deviations[i];
    const Rational& b = trace.deviations[i + 1];
    if (a == 0 ? b != 0 : b * 2 > a) decay = false;
  }
  trace.geometric_decay = decay;
  if (pair.certificate) {
    trace.g_first = as_rational(certificate_eval(pair, n, n, z).value);
    trace.g_last = as_rational(certificate_eval(pair, n, k_max + 1, z).value);
  }
  return trace;
}

// ---------------------------------------------------------------------------
// Bundled catalog

namespace wz_catalog {

inline constexpr std::string_view kW1 = R"(# F(n,k) = C(2k,k) (3k-2n+z) prod_{j=0}^{k-1} (j-n)(j-n+z) / prod_{j=1}^{k} (j^2-z^2)
# F(n+1,k)/F(n,k): the products over j telescope to (n+1)/(n+1-k) and (n+1-z)/(n+1-k-z).
# F(n,k+1)/F(n,k): C(2k+2,k+1)/C(2k,k) = 2(2k+1)/(k+1), one new factor on each product.
name=W1
shiftN=(3*k-2*n-2+z)*(n+1)*(n+1-z)/((3*k-2*n+z)*(n+1-k)*(n+1-k-z))
shiftK=2*(2*k+1)*(3*k+3-2*n+z)*(k-n)*(k-n+z)/((k+1)*(3*k-2*n+z)*((k+1)^2-z^2))
base=(1,1,2)
certificate=k*(k^2-z^2)/((2*n-3*k-z)*(n+1-k)*(n+1-k-z))
)";

inline constexpr std::string_view kW1prime = R"(# W1 with the product over j started at 1: F'(n,k) = F(n,k) / (n(n-z)).
# Only the term is cataloged; F' is not half of a WZ pair.
name=W1prime
shiftN=(3*k-2*n-2+z)*n*(n-z)/((3*k-2*n+z)*(n+1-k)*(n+1-k-z))
shiftK=2*(2*k+1)*(3*k+3-2*n+z)*(k-n)*(k-n+z)/((k+1)*(3*k-2*n+z)*((k+1)^2-z^2))
base=(1,1,2/(1-z))
)";

inline constexpr std::string_view kW2 = R"(# F(n,k) = (3k-2n+z)/(k C(2k,k)) * prod_{j=1}^{k-1} (j^2-z^2) / prod_{j=1, j!=n}^{k} (j-n)(j-n+z)
# The quotients below agree with F for k >= n, the range of the infinite sum.
# Certificate: G = R F with R = 2(2k-1)(k-n)(k-n+z) / (n(2n-3k-z)(n-z)).
name=W2
shiftN=(3*k-2*n-2+z)*(k-n)*(k-n+z)/((3*k-2*n+z)*n*(n-z))
shiftK=(3*k+3-2*n+z)*k*(k^2-z^2)/((3*k-2*n+z)*2*(2*k+1)*(k+1-n)*(k+1-n+z))
base=(1,1,(1+z)/2)
certificate=2*(2*k-1)*(k-n)*(k-n+z)/(n*(2*n-3*k-z)*(n-z))
)";

inline constexpr std::string_view kW3 = R"(# F(n,k) = C(n+k,k)/k, G(n,k) = k C(n+k,k)/(n+1)^2.
name=W3
shiftN=(n+1+k)/(n+1)
shiftK=k*(n+k+1)/(k+1)^2
base=(1,1,2)
certificate=k^2/(n+1)^2
)";

inline const std::vector<std::pair<std::string, std::string_view>>& files() {
  static const std::vector<std::pair<std::string, std::string_view>> all{
      {"W1", kW1}, {"W1prime", kW1prime}, {"W2", kW2}, {"W3", kW3}};
  return all;
}

}  // namespace wz_catalog

inline WZPair bundled_pair(std::string_view name) {
  for (const auto& [n, text] : wz_catalog::files())
    if (n == name) return parse_pair(text, n);
  throw Error("unknown WZ pair '" + std::string(name) + "'");
}

}  // namespace zetalab
