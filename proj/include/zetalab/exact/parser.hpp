#pragma once

// Recursive-descent parser for rational-function expressions:
//
//   expr     := term (('+'|'-') term)*
//   term     := factor (('*'|'/') factor)*
//   factor   := base ('^' signed-integer)?
//   base     := rational | variable | '(' expr ')' | '-' base
//   rational := integer ('/' positive-integer)?
//   variable := 'n' | 'k' | 'z' | 'a' | 'p'
//
// Whitespace is ignored. The Unicode minus sign U+2212 is accepted as '-'.

#include <zetalab/exact/product.hpp>
#include <zetalab/exact/rational_function.hpp>

#include <cctype>
#include <string>
#include <string_view>

namespace zetalab {

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  RationalFunction parse() {
    RationalFunction value = expr();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected character", pos_);
    return value;
  }

  /// Keeps the top-level factors of a product/quotient separate. Inputs whose
  /// top level is a sum become a single numerator/denominator pair.
  ProductForm parse_product() {
    ProductForm out;
    int sign = 1;
    while (true) {
      RationalFunction b = base();
      long exp = 1;
      if (accept('^')) exp = exponent(b);
      out.multiply_factor(b.numerator(), static_cast<int>(sign * exp));
      out.multiply_factor(b.denominator(), static_cast<int>(-sign * exp));
      char c = peek();
      if (c == '*') {
        sign = 1;
      } else if (c == '/') {
        sign = -1;
      } else {
        break;
      }
      advance();
    }
    skip_space();
    if (pos_ == text_.size()) return out;
    pos_ = 0;
    return ProductForm::from(parse());
  }

 private:
  static constexpr std::string_view kUnicodeMinus = "\xE2\x88\x92";

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  // Returns the next significant character, mapping U+2212 to '-'.
  char peek() {
    skip_space();
    if (pos_ >= text_.size()) return '\0';
    if (text_.substr(pos_, kUnicodeMinus.size()) == kUnicodeMinus) return '-';
    return text_[pos_];
  }

  void advance() {
    if (text_.substr(pos_, kUnicodeMinus.size()) == kUnicodeMinus) {
      pos_ += kUnicodeMinus.size();
    } else {
      ++pos_;
    }
  }

  bool accept(char c) {
    if (peek() != c) return false;
    advance();
    return true;
  }

  RationalFunction expr() {
    RationalFunction value = term();
    while (true) {
      char c = peek();
      if (c == '+') {
        advance();
        value += term();
      } else if (c == '-') {
        advance();
        value -= term();
      } else {
        return value;
      }
    }
  }

  RationalFunction term() {
    RationalFunction value = factor();
    while (true) {
      char c = peek();
      if (c == '*') {
        advance();
        value *= factor();
      } else if (c == '/') {
        advance();
        std::size_t at = pos_;
        RationalFunction divisor = factor();
        if (divisor.is_zero()) throw ParseError("division by zero polynomial", at);
        value /= divisor;
      } else {
        return value;
      }
    }
  }

  RationalFunction factor() {
    RationalFunction value = base();
    if (accept('^')) value = value.pow(exponent(value));
    return value;
  }

  // Signed exponent after '^'.
  long exponent(const RationalFunction& base_value) {
    bool negative = accept('-');
    if (!negative) accept('+');
    skip_space();
    std::size_t at = pos_;
    Integer e = digits();
    if (!e.fits_slong_p() || e > 100000) throw ParseError("exponent too large", at);
    long exp = e.get_si();
    if (negative && base_value.is_zero()) throw ParseError("division by zero polynomial", at);
    return negative ? -exp : exp;
  }

  RationalFunction base() {
    char c = peek();
    if (c == '(') {
      advance();
      RationalFunction value = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return value;
    }
    if (c == '-') {
      advance();
      return -base();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = digits();
      // rational := integer '/' positive-integer binds tighter than division.
      std::size_t save = pos_;
      if (accept('/')) {
        skip_space();
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          std::size_t at = pos_;
          Integer den = digits();
          if (den == 0) throw ParseError("literal zero denominator", at);
          return RationalFunction(make_rational(num, den));
        }
        pos_ = save;
      }
      return RationalFunction(Rational(num));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t at = pos_;
      std::size_t end = pos_;
      while (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) ++end;
      std::string_view name = text_.substr(pos_, end - pos_);
      if (name.size() == 1 && name[0] != 'b') {
        if (auto v = var_from_name(name[0])) {
          pos_ = end;
          return RationalFunction::variable(*v);
        }
      }
      throw ParseError("unknown variable '" + std::string(name) + "'", at);
    }
    if (c == '\0') throw ParseError("unexpected end of input", pos_);
    throw ParseError("syntax error", pos_);
  }

  Integer digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) throw ParseError("expected integer", start);
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline RationalFunction parse_expr(std::string_view text) { return detail::ExprParser(text).parse(); }

/// Parses a product/quotient of factors without expanding it.
inline ProductForm parse_product(std::string_view text) { return detail::ExprParser(text).parse_product(); }

}  // namespace zetalab
