#pragma once

// Multiple harmonic sums H_n(s_1, ..., s_r) = sum over 1 <= k_1 < ... < k_r <= n
// of prod k_i^(-s_i), the repetition notation {s_1,...,s_j}^m, and Bernoulli
// numbers.

#include <zetalab/exact.hpp>

#include <cctype>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace zetalab {

using Composition = std::vector<unsigned>;

inline unsigned weight(const Composition& c) {
  unsigned w = 0;
  for (unsigned s : c) w += s;
  return w;
}

inline void validate_composition(const Composition& c) {
  if (c.empty()) throw Error("empty composition");
  for (unsigned s : c)
    if (s == 0) throw Error("composition parts must be positive");
}

inline std::string to_string(const Composition& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(c[i]);
  }
  return out;
}

/// {block}^repetitions followed by suffix.
struct RepeatedBlock {
  Composition block;
  unsigned repetitions = 0;
  Composition suffix;

  Composition expand() const {
    Composition out;
    out.reserve(block.size() * repetitions + suffix.size());
    for (unsigned m = 0; m < repetitions; ++m) out.insert(out.end(), block.begin(), block.end());
    out.insert(out.end(), suffix.begin(), suffix.end());
    return out;
  }
};

/// Parses "1,1,2" or the repeated form "{1}^3,2" (several blocks allowed,
/// e.g. "{1,2}^2,{1}^0,3").
inline Composition parse_composition(std::string_view text) {
  Composition out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto number = [&]() -> unsigned {
    skip();
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i || i - start > 6) throw ParseError("expected part", start);
    return static_cast<unsigned>(std::stoul(std::string(text.substr(start, i - start))));
  };
  while (true) {
    skip();
    if (i < text.size() && text[i] == '{') {
      ++i;
      Composition block;
      while (true) {
        block.push_back(number());
        skip();
        if (i < text.size() && text[i] == ',') {
          ++i;
          continue;
        }
        if (i < text.size() && text[i] == '}') break;
        throw ParseError("expected '}'", i);
      }
      ++i;
      skip();
      if (i >= text.size() || text[i] != '^') throw ParseError("expected '^'", i);
      ++i;
      unsigned m = number();
      Composition expanded = RepeatedBlock{block, m, {}}.expand();
      out.insert(out.end(), expanded.begin(), expanded.end());
    } else {
      out.push_back(number());
    }
    skip();
    if (i == text.size()) break;
    if (text[i] != ',') throw ParseError("expected ','", i);
    ++i;
  }
  validate_composition(out);
  return out;
}

/// Running nested sums S_j(n) = H_n(s_1..s_j), j = 0..r, over any ring type
/// offering add, mul and an inverse-power table.
template <class Ring>
class MhsState {
 public:
  using value_type = typename Ring::value_type;

  MhsState(const Ring& ring, Composition c) : ring_(ring), c_(std::move(c)) {
    validate_composition(c_);
    sums_.assign(c_.size() + 1, ring_.zero());
    sums_[0] = ring_.one();
  }

  /// Advances from n-1 to n, given inv_powers[s] = n^(-s).
  void step(const std::vector<value_type>& inv_powers) {
    for (std::size_t j = c_.size(); j >= 1; --j)
      sums_[j] = ring_.add(sums_[j], ring_.mul(sums_[j - 1], inv_powers[c_[j - 1]]));
  }

  const value_type& value() const { return sums_.back(); }
  const Composition& composition() const { return c_; }

 private:
  Ring ring_;
  Composition c_;
  std::vector<value_type> sums_;
};

/// Q as a ring, for the exact prefix tables.
struct RationalRing {
  using value_type = Rational;
  Rational zero() const { return 0; }
  Rational one() const { return 1; }
  Rational add(const Rational& x, const Rational& y) const { return x + y; }
  Rational mul(const Rational& x, const Rational& y) const { return x * y; }
};

/// Computes H_n(c) for every composition in `cs` in one pass over k = 1..n.
/// `inverse(k)` must return k^(-1) in the ring.
template <class Ring, class Inverse>
std::vector<typename Ring::value_type> mhs_batch(const Ring& ring, unsigned long n, const std::vector<Composition>& cs,
                                                 Inverse&& inverse) {
  unsigned max_part = 0;
  std::vector<MhsState<Ring>> states;
  states.reserve(cs.size());
  for (const auto& c : cs) {
    states.emplace_back(ring, c);
    for (unsigned s : c) max_part = std::max(max_part, s);
  }
  std::vector<typename Ring::value_type> powers(max_part + 1, ring.one());
  for (unsigned long k = 1; k <= n; ++k) {
    auto inv = inverse(k);
    for (unsigned s = 1; s <= max_part; ++s) powers[s] = ring.mul(powers[s - 1], inv);
    for (auto& st : states) st.step(powers);
  }
  std::vector<typename Ring::value_type> out;
  out.reserve(states.size());
  for (const auto& st : states) out.push_back(st.value());
  return out;
}

inline Rational mhs(unsigned long n, const Composition& c) {
  validate_composition(c);
  if (n < c.size()) return 0;
  return mhs_batch(RationalRing{}, n, {c}, [](unsigned long k) { return Rational(1, k); })[0];
}

inline Rational mhs_repeat(unsigned long n, const RepeatedBlock& rb) { return mhs(n, rb.expand()); }

struct HarmonicValue {
  unsigned long n;
  Composition composition;
  Rational value;
};

/// H_1(c), ..., H_{n_max}(c), each obtained from the previous prefix state.
inline std::vector<HarmonicValue> mhs_prefix_table(unsigned long n_max, const Composition& c) {
  if (n_max < 1) throw Error("n_max must be at least 1");
  RationalRing ring;
  MhsState<RationalRing> state(ring, c);
  unsigned max_part = 0;
  for (unsigned s : c) max_part = std::max(max_part, s);
  std::vector<Rational> powers(max_part + 1, Rational(1));
  std::vector<HarmonicValue> out;
  out.reserve(n_max);
  for (unsigned long k = 1; k <= n_max; ++k) {
    for (unsigned s = 1; s <= max_part; ++s) powers[s] = powers[s - 1] / static_cast<long>(k);
    state.step(powers);
    out.push_back({k, c, state.value()});
  }
  return out;
}

/// H_n(c) modulo M for n < every prime factor of M (so each k is invertible).
template <class Ring>
typename Ring::value_type mhs_mod(const Ring& ring, unsigned long n, const Composition& c) {
  return mhs_batch(ring, n, {c}, [&](unsigned long k) { return ring.inv(ring.from_int(static_cast<long>(k))); })[0];
}

namespace detail {

class BernoulliTable {
 public:
  Rational get(unsigned n) {
    std::lock_guard<std::mutex> lock(mutex_);
    while (values_.size() <= n) extend();
    return values_[n];
  }

 private:
  // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j.
  void extend() {
    unsigned m = static_cast<unsigned>(values_.size());
    if (m == 0) {
      values_.emplace_back(1);
      return;
    }
    if (m > 1 && m % 2 == 1) {
      values_.emplace_back(0);
      return;
    }
    Rational acc(0);
    Integer binom(1);  // C(m+1, j)
    for (unsigned j = 0; j < m; ++j) {
      if (values_[j] != 0) acc += Rational(binom) * values_[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    values_.push_back(-acc / static_cast<long>(m + 1));
  }

  std::mutex mutex_;
  std::vector<Rational> values_;
};

inline BernoulliTable& bernoulli_table() {
  static BernoulliTable table;
  return table;
}

}  // namespace detail

/// B_n with B_1 = -1/2.
inline Rational bernoulli(unsigned n) { return detail::bernoulli_table().get(n); }

}  // namespace zetalab
