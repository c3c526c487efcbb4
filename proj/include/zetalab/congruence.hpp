#pragma once

// Prime-power congruences lhs(p) == rhs(p) mod p^m, checked on two paths:
// exact rationals with a p-adic valuation of the difference, and residues
// mod p^M combined as PadicViews, with M chosen by a precision planner so
// that divisions by powers of p still leave the comparison certified.

#include <zetalab/exact.hpp>
#include <zetalab/harmonic.hpp>
#include <zetalab/parallel.hpp>

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zetalab {

// ---------------------------------------------------------------------------
// Sums and products over j, k < p that make up the left-hand sides.

enum class Recipe {
  SumInvK,       // sum C(2k,k)/k
  SumAltInvK2,   // sum (-1)^k C(2k,k)/k^2
  SumInvK3,      // sum C(2k,k)/k^3
  SumH2OverK,    // sum C(2k,k) H_k(2)/k
  SumCo5b,       // sum C(2k,k) (2/k^2 - 3H_k(1)/k)
  SumCo5c,       // sum (-1)^k C(2k,k) (4/k^4 + 5H_k(2)/k^2)
  SumD1,         // sum C(2k,k) (1/k^3 + 3H_k(2)/k)
  SumD2,         // sum C(2k,k) (3H_k(2)/k - 1/(2k^3))
  ProdAux1,      // prod_{j<p} (p^4-j^4)/(4p^4+j^4)
  SumAux2,       // p^2 sum_{j<p} 1/(p^2+j^2)
  SumAux3,       // 2p^2 sum_{j<p} (2p^2+j^2)/(4p^4+j^4)
};

inline std::string recipe_name(Recipe r) {
  switch (r) {
    case Recipe::SumInvK: return "sum_{k<p} C(2k,k)/k";
    case Recipe::SumAltInvK2: return "sum_{k<p} (-1)^k C(2k,k)/k^2";
    case Recipe::SumInvK3: return "sum_{k<p} C(2k,k)/k^3";
    case Recipe::SumH2OverK: return "sum_{k<p} C(2k,k) H_k(2)/k";
    case Recipe::SumCo5b: return "sum_{k<p} C(2k,k) (2/k^2 - 3H_k(1)/k)";
    case Recipe::SumCo5c: return "sum_{k<p} (-1)^k C(2k,k) (4/k^4 + 5H_k(2)/k^2)";
    case Recipe::SumD1: return "sum_{k<p} C(2k,k) (1/k^3 + 3H_k(2)/k)";
    case Recipe::SumD2: return "sum_{k<p} C(2k,k) (3H_k(2)/k - 1/(2k^3))";
    case Recipe::ProdAux1: return "prod_{j<p} (p^4-j^4)/(4p^4+j^4)";
    case Recipe::SumAux2: return "p^2 sum_{j<p} 1/(p^2+j^2)";
    case Recipe::SumAux3: return "2p^2 sum_{j<p} (2p^2+j^2)/(4p^4+j^4)";
  }
  return "?";
}

/// Q with the ring interface of ModRing64, for the exact path.
struct ExactRing {
  using value_type = Rational;
  Rational zero() const { return 0; }
  Rational one() const { return 1; }
  Rational from_int(long x) const { return x; }
  Rational from_integer(const Integer& x) const { return Rational(x); }
  Rational from_rational(const Rational& x) const { return x; }
  Rational add(const Rational& x, const Rational& y) const { return x + y; }
  Rational sub(const Rational& x, const Rational& y) const { return x - y; }
  Rational neg(const Rational& x) const { return -x; }
  Rational mul(const Rational& x, const Rational& y) const { return x * y; }
  Rational inv(const Rational& x) const {
    if (x == 0) throw Error("division by zero");
    return 1 / x;
  }
  Rational pow(const Rational& x, std::uint64_t e) const { return rpow(x, static_cast<long>(e)); }
};

/// C(2k,k) for k = 1..k_max from C(2k,k) = C(2k-2,k-1) * 2(2k-1)/k, dividing
/// by k through the ring inverse.
template <class Ring>
std::vector<typename Ring::value_type> central_binomials(const Ring& ring, long k_max) {
  std::vector<typename Ring::value_type> out;
  out.reserve(static_cast<std::size_t>(std::max(k_max, 0L)));
  auto c = ring.one();
  for (long k = 1; k <= k_max; ++k) {
    c = ring.mul(ring.mul(c, ring.from_int(2 * (2 * k - 1))), ring.inv(ring.from_int(k)));
    out.push_back(c);
  }
  return out;
}

/// Residues of C(2k,k) mod p^m for k = 1..k_max (k_max < p).
inline std::vector<Integer> central_binomial_stream(long p, unsigned m, long k_max) {
  require_prime(Integer(p));
  if (m < 1) throw Error("modulus exponent must be positive");
  if (k_max >= p) throw Error("k not invertible mod p: k_max must be below p");
  return with_mod_ring(ipow(Integer(p), m), [&](const auto& ring) {
    std::vector<Integer> out;
    for (const auto& c : central_binomials(ring, k_max)) out.push_back(ring.to_integer(c));
    return out;
  });
}

template <class Ring>
typename Ring::value_type eval_recipe(const Ring& ring, Recipe recipe, long p,
                                      const std::vector<typename Ring::value_type>& central) {
  using V = typename Ring::value_type;
  const Integer P(p), P2 = P * P, P4 = P2 * P2;
  V sum = ring.zero();
  switch (recipe) {
    case Recipe::ProdAux1: {
      V prod = ring.one();
      for (long j = 1; j < p; ++j) {
        Integer j4 = Integer(j) * j * j * j;
        prod = ring.mul(prod, ring.mul(ring.from_integer(P4 - j4), ring.inv(ring.from_integer(4 * P4 + j4))));
      }
      return prod;
    }
    case Recipe::SumAux2: {
      for (long j = 1; j < p; ++j) sum = ring.add(sum, ring.inv(ring.from_integer(P2 + Integer(j) * j)));
      return ring.mul(ring.from_integer(P2), sum);
    }
    case Recipe::SumAux3: {
      for (long j = 1; j < p; ++j) {
        Integer j2 = Integer(j) * j;
        sum = ring.add(sum, ring.mul(ring.from_integer(2 * P2 + j2), ring.inv(ring.from_integer(4 * P4 + j2 * j2))));
      }
      return ring.mul(ring.from_integer(2 * P2), sum);
    }
    default: break;
  }
  V h1 = ring.zero(), h2 = ring.zero();
  for (long k = 1; k < p; ++k) {
    const V ik = ring.inv(ring.from_int(k));
    const V ik2 = ring.mul(ik, ik), ik3 = ring.mul(ik2, ik);
    h1 = ring.add(h1, ik);
    h2 = ring.add(h2, ik2);
    const V& c = central[static_cast<std::size_t>(k - 1)];
    const bool odd = k % 2 == 1;
    V term;
    switch (recipe) {
      case Recipe::SumInvK: term = ik; break;
      case Recipe::SumAltInvK2: term = odd ? ring.neg(ik2) : ik2; break;
      case Recipe::SumInvK3: term = ik3; break;
      case Recipe::SumH2OverK: term = ring.mul(h2, ik); break;
      case Recipe::SumCo5b:
        term = ring.sub(ring.mul(ring.from_int(2), ik2), ring.mul(ring.from_int(3), ring.mul(h1, ik)));
        break;
      case Recipe::SumCo5c: {
        term = ring.add(ring.mul(ring.from_int(4), ring.mul(ik2, ik2)), ring.mul(ring.from_int(5), ring.mul(h2, ik2)));
        if (odd) term = ring.neg(term);
        break;
      }
      case Recipe::SumD1: term = ring.add(ik3, ring.mul(ring.from_int(3), ring.mul(h2, ik))); break;
      case Recipe::SumD2:
        term = ring.sub(ring.mul(ring.from_int(3), ring.mul(h2, ik)),
                        ring.mul(ring.from_rational(make_rational(1, 2)), ik3));
        break;
      default: throw Error("unhandled recipe");
    }
    sum = ring.add(sum, ring.mul(c, term));
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Expression trees over p.

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Kind { Const, PPow, Harmonic, Bernoulli, CentralP, Sum, Add, Sub, Mul };
  Kind kind;
  Rational constant;          // Const
  long exponent = 0;          // PPow: p^exponent; Bernoulli: B_{p - exponent}
  Composition composition;    // Harmonic: H_{p-1}(composition)
  Recipe recipe{};            // Sum
  std::vector<Expr> children;
};

namespace cexpr {

inline Expr make(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }
inline Expr cst(const Rational& c) { return make({ExprNode::Kind::Const, c}); }
inline Expr ppow(long t) { return make({ExprNode::Kind::PPow, 0, t}); }
inline Expr H(Composition c) {
  validate_composition(c);
  return make({ExprNode::Kind::Harmonic, 0, 0, std::move(c)});
}
/// B_{p - offset}.
inline Expr bern(long offset) { return make({ExprNode::Kind::Bernoulli, 0, offset}); }
inline Expr central_p() { return make({ExprNode::Kind::CentralP}); }
inline Expr sum(Recipe r) { return make({ExprNode::Kind::Sum, 0, 0, {}, r}); }

inline Expr operator+(Expr x, Expr y) { return make({ExprNode::Kind::Add, 0, 0, {}, {}, {std::move(x), std::move(y)}}); }
inline Expr operator-(Expr x, Expr y) { return make({ExprNode::Kind::Sub, 0, 0, {}, {}, {std::move(x), std::move(y)}}); }
inline Expr operator*(Expr x, Expr y) { return make({ExprNode::Kind::Mul, 0, 0, {}, {}, {std::move(x), std::move(y)}}); }
inline Expr operator*(const Rational& c, Expr y) { return cst(c) * std::move(y); }

}  // namespace cexpr

/// Key naming a primitive that needs its own precision (H, B, C(2p,p), sums).
inline std::string primitive_key(const ExprNode& n) {
  switch (n.kind) {
    case ExprNode::Kind::Harmonic: return "H_{p-1}(" + to_string(n.composition) + ")";
    case ExprNode::Kind::Bernoulli: return "B_{p-" + std::to_string(n.exponent) + "}";
    case ExprNode::Kind::CentralP: return "C(2p,p)";
    case ExprNode::Kind::Sum: return recipe_name(n.recipe);
    default: return {};
  }
}

inline std::string to_string(const Expr& e) {
  const ExprNode& n = *e;
  switch (n.kind) {
    case ExprNode::Kind::Const: return n.constant.get_str();
    case ExprNode::Kind::PPow: return n.exponent == 1 ? "p" : "p^" + std::to_string(n.exponent);
    case ExprNode::Kind::Add: return "(" + to_string(n.children[0]) + " + " + to_string(n.children[1]) + ")";
    case ExprNode::Kind::Sub: return "(" + to_string(n.children[0]) + " - " + to_string(n.children[1]) + ")";
    case ExprNode::Kind::Mul: return to_string(n.children[0]) + "*" + to_string(n.children[1]);
    default: return primitive_key(n);
  }
}

inline bool uses_bernoulli(const Expr& e) {
  if (e->kind == ExprNode::Kind::Bernoulli) return true;
  for (const auto& c : e->children)
    if (uses_bernoulli(c)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// The case catalog.

enum class CaseStatus { Theorem, Conjecture };

struct CongruenceCase {
  std::string id;
  long p0 = 0;  // hypothesis: p > p0
  unsigned m = 1;
  Expr lhs, rhs;
  CaseStatus status = CaseStatus::Theorem;
  std::string note;
};

namespace detail {

inline std::vector<CongruenceCase> build_congruence_catalog() {
  using namespace cexpr;
  const Expr h1 = H({1}), h2 = H({2}), h3 = H({3}), h4 = H({4});
  auto q = [](long a, long b = 1) { return cst(make_rational(a, b)); };
  std::vector<CongruenceCase> c;
  auto add = [&](std::string id, long p0, unsigned m, Expr lhs, Expr rhs, std::string note = {},
                 CaseStatus status = CaseStatus::Theorem) {
    c.push_back({std::move(id), p0, m, std::move(lhs), std::move(rhs), status, std::move(note)});
  };
  add("CO1", 5, 4, sum(Recipe::SumInvK), q(-8, 3) * h1);
  add("CO2", 5, 4, sum(Recipe::SumAltInvK2), q(4, 5) * (h1 * ppow(-1) + q(2) * ppow(1) * h3));
  add("CO4b", 5, 2, sum(Recipe::SumInvK3), q(-2) * h1 * ppow(-2));
  add("CO4c", 5, 2, sum(Recipe::SumH2OverK), q(2, 3) * h1 * ppow(-2));
  add("CO5", 3, 5, sum(Recipe::SumInvK), q(-8, 3) * h1 - q(5, 3) * ppow(2) * h3,
      "stated for p > 3 while the lemmas of its proof assume p > 5; p = 5 is scanned too");
  add("CO5b", 3, 4, sum(Recipe::SumCo5b), q(2) * h1 * ppow(-1) + q(3) * ppow(1) * h3);
  add("CO5c", 3, 2, sum(Recipe::SumCo5c), q(-1) * h4);
  add("TA", 5, 4, h2, q(-2) * h1 * ppow(-1) - q(1, 3) * ppow(1) * h3);
  add("PPP", 5, 6, q(1, 2) * central_p(), q(1) + q(2) * ppow(1) * h1 + q(2, 3) * ppow(3) * h3);
  add("PPP2", 5, 6, q(1, 2) * central_p(), q(1) - ppow(2) * h2 - q(1, 2) * ppow(4) * h4,
      "second form of the same expansion");
  add("D1", 5, 2, sum(Recipe::SumD1), q(0), "read as LHS == 0 mod p^2");
  add("D1-MID", 5, 2, sum(Recipe::SumD1), q(8, 3) * h1 * ppow(-2) + q(5, 3) * h3 + q(4, 3) * h2 * ppow(-1),
      "middle expression with 4H_{p-1}(2)/(3p); the printed 4pH_{p-1}(2)/3 has valuation 0");
  add("D2", 5, 2, sum(Recipe::SumD2), q(3) * h1 * ppow(-2), "the printed '=' before 3H_{p-1}(1)/p^2 read as a congruence");
  add("SUN-C1", 7, 4, sum(Recipe::SumInvK3), q(-2) * h1 * ppow(-2) - q(13, 27) * h3, {}, CaseStatus::Conjecture);
  add("SUN-C2", 7, 3, sum(Recipe::SumH2OverK), q(2, 3) * h1 * ppow(-2) - q(38, 81) * h3, {}, CaseStatus::Conjecture);
  for (long s = 1; s <= 6; ++s) {
    auto us = static_cast<unsigned>(s);
    if (s % 2 == 1) {
      add("SUNZH-ODD-" + std::to_string(s), s + 2, 3, H({us}),
          q(-s * (s + 1), 2 * (s + 2)) * ppow(2) * bern(s + 2));
    } else {
      add("SUNZH-EVEN-" + std::to_string(s), s + 2, 2, H({us}), q(s, s + 1) * ppow(1) * bern(s + 1));
    }
  }
  add("H12", 5, 3, H({1, 2}), q(-3) * h1 * ppow(-2) - q(5, 12) * h3);
  add("H112", 5, 2, H({1, 1, 2}), q(-11, 12) * h3 * ppow(-1));
  add("H1112", 5, 1, H({1, 1, 1, 2}), q(-5, 6) * h3 * ppow(-2));
  add("H22", 5, 2, H({2, 2}), q(1, 3) * h3 * ppow(-1));
  add("H13", 5, 2, H({1, 3}), q(3, 4) * h3 * ppow(-1));
  add("H212", 5, 1, H({2, 1, 2}), q(0));
  add("H122", 5, 1, H({1, 2, 2}), q(5, 4) * h3 * ppow(-2));
  add("H113", 5, 1, H({1, 1, 3}), q(-5, 12) * h3 * ppow(-2));
  // The printed AUX3 sum runs to j = p; that last term is 2p^2 * 3p^2/(5p^4) = 6/5
  // and stays a constant so that p = 5 remains evaluable on the modular path.
  const Expr aux3 = sum(Recipe::SumAux3) + q(6, 5);
  add("AUX1", 3, 6, sum(Recipe::ProdAux1), q(1) - q(5) * ppow(4) * h4);
  add("AUX2", 3, 6, sum(Recipe::SumAux2), ppow(2) * h2 - ppow(4) * h4);
  add("AUX3", 3, 6, aux3, q(6, 5) + q(2) * ppow(2) * h2 + q(4) * ppow(4) * h4,
      "inner sum runs to j = p as printed");
  add("RHS6", 3, 6,
      q(-2) - central_p() * sum(Recipe::ProdAux1) * (q(1, 5) + sum(Recipe::SumAux2) - aux3),
      q(-1) * ppow(4) * h4);
  add("WOLSTENHOLME", 3, 2, h1, q(0));
  return c;
}

}  // namespace detail

inline const std::vector<CongruenceCase>& congruence_catalog() {
  static const std::vector<CongruenceCase> all = detail::build_congruence_catalog();
  return all;
}

inline const CongruenceCase& congruence_case(std::string_view id) {
  for (const auto& c : congruence_catalog())
    if (c.id == id) return c;
  throw Error("unknown congruence case '" + std::string(id) + "'");
}

/// "all", a family prefix ("SUNZH-ODD", "SUNZH-EVEN", "SUNZH") or a single id.
inline std::vector<std::string> expand_case_ids(std::string_view id) {
  std::vector<std::string> out;
  for (const auto& c : congruence_catalog()) {
    bool family = id.size() >= 5 && id.substr(0, 5) == "SUNZH" && c.id.rfind(std::string(id) + "-", 0) == 0;
    if (id == "all" || c.id == id || family) out.push_back(c.id);
  }
  if (out.empty()) throw Error("unknown congruence case '" + std::string(id) + "'");
  return out;
}

struct CongruenceOptions {
  long bernoulli_cap = 100;
  std::optional<unsigned> mod_exp;  // overrides the case's m
};

inline unsigned target_exponent(const CongruenceCase& c, const CongruenceOptions& opt) {
  return opt.mod_exp ? *opt.mod_exp : c.m;
}

inline void check_hypothesis(const CongruenceCase& c, long p, const CongruenceOptions& opt) {
  require_prime(Integer(p));
  if (p <= c.p0)
    throw Error("hypothesis: case " + c.id + " requires p > " + std::to_string(c.p0) + ", got p = " + std::to_string(p));
  if ((uses_bernoulli(c.lhs) || uses_bernoulli(c.rhs)) && p > opt.bernoulli_cap)
    throw Error("case capped: " + c.id + " needs Bernoulli numbers beyond the cap p <= " +
                std::to_string(opt.bernoulli_cap));
}

// ---------------------------------------------------------------------------
// Precision planning.

namespace detail {

/// Lower bound on v_p of a subtree that holds for every admissible prime.
inline long low_valuation(const Expr& e) {
  switch (e->kind) {
    case ExprNode::Kind::PPow: return e->exponent;
    case ExprNode::Kind::Add:
    case ExprNode::Kind::Sub: return std::min(low_valuation(e->children[0]), low_valuation(e->children[1]));
    case ExprNode::Kind::Mul: return low_valuation(e->children[0]) + low_valuation(e->children[1]);
    default: return 0;
  }
}

inline void plan(const Expr& e, long required, std::map<std::string, long>& out) {
  switch (e->kind) {
    case ExprNode::Kind::Const:
    case ExprNode::Kind::PPow: return;
    case ExprNode::Kind::Add:
    case ExprNode::Kind::Sub:
      for (const auto& c : e->children) plan(c, required, out);
      return;
    case ExprNode::Kind::Mul:
      plan(e->children[0], required - low_valuation(e->children[1]), out);
      plan(e->children[1], required - low_valuation(e->children[0]), out);
      return;
    default: {
      long& slot = out[primitive_key(*e)];
      slot = std::max({slot, required, 1L});
    }
  }
}

/// Largest total power of p divided out along any path; sizes the relative
/// precision of constants and p-powers.
inline long max_division(const Expr& e) {
  if (e->kind == ExprNode::Kind::PPow) return std::max(0L, -e->exponent);
  long m = 0;
  if (e->kind == ExprNode::Kind::Mul) return max_division(e->children[0]) + max_division(e->children[1]);
  for (const auto& c : e->children) m = std::max(m, max_division(c));
  return m;
}

}  // namespace detail

/// Precision (exponent of p) each primitive must be computed to so that
/// lhs - rhs is certified modulo p^m.
inline std::map<std::string, long> precision_plan(const CongruenceCase& c, std::optional<unsigned> m = std::nullopt) {
  std::map<std::string, long> out;
  long target = m ? *m : c.m;
  detail::plan(c.lhs, target, out);
  detail::plan(c.rhs, target, out);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation.

namespace detail {

class ExactEvaluator {
 public:
  explicit ExactEvaluator(long p) : p_(p) {}

  Rational eval(const Expr& e) {
    const ExprNode& n = *e;
    switch (n.kind) {
      case ExprNode::Kind::Const: return n.constant;
      case ExprNode::Kind::PPow: return rpow(Rational(p_), n.exponent);
      case ExprNode::Kind::Add: return eval(n.children[0]) + eval(n.children[1]);
      case ExprNode::Kind::Sub: return eval(n.children[0]) - eval(n.children[1]);
      case ExprNode::Kind::Mul: return eval(n.children[0]) * eval(n.children[1]);
      default: break;
    }
    std::string key = primitive_key(n);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Rational v;
    switch (n.kind) {
      case ExprNode::Kind::Harmonic: v = mhs(static_cast<unsigned long>(p_ - 1), n.composition); break;
      case ExprNode::Kind::Bernoulli: v = bernoulli(static_cast<unsigned>(p_ - n.exponent)); break;
      case ExprNode::Kind::CentralP:
        v = Rational(binomial(static_cast<unsigned long>(2 * p_), static_cast<unsigned long>(p_)));
        break;
      default: {
        // Independent of the modular recurrence: binomials straight from GMP.
        std::vector<Rational> central;
        for (long k = 1; k < p_; ++k)
          central.emplace_back(binomial(static_cast<unsigned long>(2 * k), static_cast<unsigned long>(k)));
        v = eval_recipe(ExactRing{}, n.recipe, p_, central);
      }
    }
    return cache_.emplace(std::move(key), v).first->second;
  }

 private:
  long p_;
  std::map<std::string, Rational> cache_;
};

class ModularEvaluator {
 public:
  ModularEvaluator(long p, std::map<std::string, long> plan, long constant_precision)
      : p_(p), P_(p), plan_(std::move(plan)), constant_precision_(constant_precision) {}

  PadicView eval(const Expr& e) {
    const ExprNode& n = *e;
    switch (n.kind) {
      case ExprNode::Kind::Const: return PadicView::from_rational(n.constant, P_, constant_precision_);
      case ExprNode::Kind::PPow: return PadicView::from_residue(Integer(1), P_, constant_precision_, n.exponent);
      case ExprNode::Kind::Add: return eval(n.children[0]) + eval(n.children[1]);
      case ExprNode::Kind::Sub: return eval(n.children[0]) - eval(n.children[1]);
      case ExprNode::Kind::Mul: return eval(n.children[0]) * eval(n.children[1]);
      default: break;
    }
    std::string key = primitive_key(n);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    long prec = plan_.at(key);
    Integer residue;
    if (n.kind == ExprNode::Kind::Bernoulli) {
      // B_{p-s-1}, B_{p-s-2} are p-integral (index below p - 1).
      residue = mod_reduce(bernoulli(static_cast<unsigned>(p_ - n.exponent)), P_, static_cast<unsigned>(prec));
    } else {
      residue = with_mod_ring(ipow(P_, static_cast<unsigned long>(prec)), [&](const auto& ring) {
        return ring.to_integer(primitive(ring, n));
      });
    }
    return cache_.emplace(std::move(key), PadicView::from_residue(residue, P_, prec)).first->second;
  }

 private:
  template <class Ring>
  typename Ring::value_type primitive(const Ring& ring, const ExprNode& n) const {
    switch (n.kind) {
      case ExprNode::Kind::Harmonic: return mhs_mod(ring, static_cast<unsigned long>(p_ - 1), n.composition);
      case ExprNode::Kind::CentralP: {
        // C(2p,p) = 2 prod_{j<p} (p+j)/j.
        auto v = ring.from_int(2);
        for (long j = 1; j < p_; ++j) v = ring.mul(v, ring.mul(ring.from_int(p_ + j), ring.inv(ring.from_int(j))));
        return v;
      }
      default: return eval_recipe(ring, n.recipe, p_, central_binomials(ring, p_ - 1));
    }
  }

  long p_;
  Integer P_;
  std::map<std::string, long> plan_;
  long constant_precision_;
  std::map<std::string, PadicView> cache_;
};

}  // namespace detail

struct ExactOutcome {
  long p = 0;
  unsigned m = 0;
  long valuation = kInfiniteValuation;  // v_p(lhs - rhs)
  bool pass = false;
  std::optional<Integer> lhs_residue, rhs_residue;  // mod p^m, when the side is p-integral
};

struct ModularOutcome {
  long p = 0;
  unsigned m = 0;
  bool pass = false;
  long valuation_lower_bound = 0;  // certified: v_p(lhs - rhs) >= this
  std::optional<Integer> lhs_residue, rhs_residue;
  std::map<std::string, long> plan;
};

inline ExactOutcome eval_case_exact(const CongruenceCase& c, long p, const CongruenceOptions& opt = {}) {
  check_hypothesis(c, p, opt);
  detail::ExactEvaluator ev(p);
  Rational lhs = ev.eval(c.lhs), rhs = ev.eval(c.rhs);
  ExactOutcome out;
  out.p = p;
  out.m = target_exponent(c, opt);
  Integer P(p);
  out.valuation = padic_valuation(lhs - rhs, P);
  out.pass = out.valuation >= static_cast<long>(out.m);
  auto residue = [&](const Rational& r) -> std::optional<Integer> {
    if (r != 0 && padic_valuation(r, P) < 0) return std::nullopt;
    return mod_reduce(r, P, out.m);
  };
  out.lhs_residue = residue(lhs);
  out.rhs_residue = residue(rhs);
  return out;
}

inline ModularOutcome eval_case_modular(const CongruenceCase& c, long p, const CongruenceOptions& opt = {}) {
  check_hypothesis(c, p, opt);
  ModularOutcome out;
  out.p = p;
  out.m = target_exponent(c, opt);
  out.plan = precision_plan(c, out.m);
  long extra = std::max(detail::max_division(c.lhs), detail::max_division(c.rhs));
  detail::ModularEvaluator ev(p, out.plan, static_cast<long>(out.m) + extra + 2);
  PadicView lhs = ev.eval(c.lhs), rhs = ev.eval(c.rhs);
  PadicView diff = lhs - rhs;
  if (diff.precision() < static_cast<long>(out.m))
    throw Error("precision deficit in " + c.id + " at p = " + std::to_string(p) + ": difference known mod p^" +
                std::to_string(diff.precision()) + " only");
  out.pass = diff.is_zero_mod(out.m);
  out.valuation_lower_bound = diff.is_exact_zero() ? kInfiniteValuation : std::min(diff.valuation(), diff.precision());
  auto residue = [&](const PadicView& side) -> std::optional<Integer> {
    if (side.precision() < static_cast<long>(out.m) || (!side.is_exact_zero() && side.valuation() < 0))
      return std::nullopt;
    return side.residue(out.m);
  };
  out.lhs_residue = residue(lhs);
  out.rhs_residue = residue(rhs);
  return out;
}

// ---------------------------------------------------------------------------
// Scans.

enum class ScanPath { Exact, Modular, Both };

inline std::string path_name(ScanPath p) {
  switch (p) {
    case ScanPath::Exact: return "exact";
    case ScanPath::Modular: return "modular";
    case ScanPath::Both: return "both";
  }
  return "?";
}

inline ScanPath parse_scan_path(std::string_view s) {
  if (s == "exact") return ScanPath::Exact;
  if (s == "modular") return ScanPath::Modular;
  if (s == "both") return ScanPath::Both;
  throw Error("unknown path '" + std::string(s) + "' (expected exact, modular or both)");
}

struct PrimeResult {
  long p = 0;
  bool pass = false;
  long valuation = 0;             // exact valuation, or certified lower bound on the modular path
  bool valuation_is_bound = false;
  std::optional<Integer> lhs_residue, rhs_residue;
  std::optional<bool> paths_agree;  // path=both only
  std::string error;
};

struct ScanReport {
  std::string case_id;
  long p_min = 0, p_max = 0;
  unsigned m = 0;
  ScanPath path = ScanPath::Exact;
  CaseStatus case_status = CaseStatus::Theorem;
  std::vector<PrimeResult> primes;
  long min_valuation = kInfiniteValuation;
  bool pass = false;
  std::size_t errors = 0;
  double time_ms = 0;

  /// pass | fail | conjecture-consistent | counterexample | error
  std::string status() const {
    bool any_fail = false;
    for (const auto& r : primes)
      if (r.error.empty() && !r.pass) any_fail = true;
    if (case_status == CaseStatus::Conjecture) {
      if (any_fail) return "counterexample";
      return errors ? "error" : "conjecture-consistent";
    }
    if (any_fail) return "fail";
    return errors ? "error" : "pass";
  }
};

inline PrimeResult scan_prime(const CongruenceCase& c, long p, ScanPath path, const CongruenceOptions& opt) {
  PrimeResult r;
  r.p = p;
  try {
    std::optional<ExactOutcome> ex;
    std::optional<ModularOutcome> mo;
    if (path != ScanPath::Modular) ex = eval_case_exact(c, p, opt);
    if (path != ScanPath::Exact) mo = eval_case_modular(c, p, opt);
    if (ex) {
      r.pass = ex->pass;
      r.valuation = ex->valuation;
      r.lhs_residue = ex->lhs_residue;
      r.rhs_residue = ex->rhs_residue;
    } else {
      r.pass = mo->pass;
      r.valuation = mo->valuation_lower_bound;
      r.valuation_is_bound = true;
      r.lhs_residue = mo->lhs_residue;
      r.rhs_residue = mo->rhs_residue;
    }
    if (ex && mo) {
      bool agree = ex->pass == mo->pass;
      if (agree && ex->pass) agree = ex->lhs_residue == mo->lhs_residue && ex->rhs_residue == mo->rhs_residue;
      r.paths_agree = agree;
      if (!agree) r.error = "exact and modular paths disagree";
    }
  } catch (const Error& e) {
    r.error = e.what();
  }
  return r;
}

inline ScanReport scan(const CongruenceCase& c, long p_min, long p_max, ScanPath path, const CongruenceOptions& opt = {},
                       unsigned threads = default_threads()) {
  if (p_min <= c.p0)
    throw Error("hypothesis: case " + c.id + " requires p > " + std::to_string(c.p0) + ", scan starts at " +
                std::to_string(p_min));
  auto start = std::chrono::steady_clock::now();
  ScanReport report;
  report.case_id = c.id;
  report.p_min = p_min;
  report.p_max = p_max;
  report.m = target_exponent(c, opt);
  report.path = path;
  report.case_status = c.status;
  auto primes = primes_in_range(static_cast<std::uint64_t>(p_min), static_cast<std::uint64_t>(std::max(p_max, 0L)));
  report.primes.resize(primes.size());
  // Cost grows with p; hand out the large primes first.
  parallel_for(primes.size(), threads, [&](std::size_t i) {
    std::size_t slot = primes.size() - 1 - i;
    report.primes[slot] = scan_prime(c, static_cast<long>(primes[slot]), path, opt);
  });
  report.pass = true;
  for (const auto& r : report.primes) {
    if (!r.error.empty()) {
      ++report.errors;
      continue;
    }
    report.min_valuation = std::min(report.min_valuation, r.valuation);
    if (!r.pass) report.pass = false;
  }
  if (report.errors) report.pass = false;
  report.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

inline ScanReport scan(std::string_view id, long p_min, long p_max, ScanPath path, const CongruenceOptions& opt = {},
                       unsigned threads = default_threads()) {
  return scan(congruence_case(id), p_min, p_max, path, opt, threads);
}

}  // namespace zetalab
