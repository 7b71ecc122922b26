#pragma once

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "intval/integer.hpp"
#include "intval/polynomial.hpp"

namespace intval {

/// Input text rejected by one of the grammars; position is a 0-based byte
/// offset into the input.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::size_t position() const { return pos_; }

  Integer unsigned_integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }
  Integer signed_integer() {
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    Integer v = unsigned_integer();
    return neg ? Integer(-v) : v;
  }
  void expect_end() {
    if (!at_end()) fail("unexpected trailing input");
  }
  [[noreturn]] void fail(const std::string& what) { throw ParseError(what, pos_); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

// expr   := ['+'|'-'] term (('+'|'-') term)*
// term   := power (['*'] power)*
// power  := primary ['^' digits]
// primary:= digits | 'x' | '(' expr ')'
class PolyParser {
 public:
  explicit PolyParser(Cursor& c) : c_(c) {}

  IntPolynomial expr() {
    IntPolynomial acc;
    bool neg = false;
    if (c_.accept('-'))
      neg = true;
    else
      c_.accept('+');
    acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (c_.accept('+'))
        acc += term();
      else if (c_.accept('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }

 private:
  bool starts_primary() {
    char ch = c_.peek();
    return std::isdigit(static_cast<unsigned char>(ch)) || ch == 'x' || ch == '(';
  }
  IntPolynomial term() {
    IntPolynomial acc = power();
    for (;;) {
      if (c_.accept('*'))
        acc *= power();
      else if (starts_primary())
        acc *= power();
      else
        break;
    }
    return acc;
  }
  IntPolynomial power() {
    IntPolynomial base = primary();
    if (c_.accept('^')) {
      std::size_t at = c_.position();
      Integer e = c_.unsigned_integer();
      if (e > 100000) throw ParseError("exponent too large", at);
      base = pow(base, e.get_ui());
    }
    return base;
  }
  IntPolynomial primary() {
    char ch = c_.peek();
    if (ch == 'x') {
      c_.accept('x');
      return IntPolynomial::x();
    }
    if (ch == '(') {
      c_.accept('(');
      IntPolynomial inner = expr();
      c_.expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) return IntPolynomial::constant(c_.unsigned_integer());
    c_.fail("expected a coefficient, 'x' or '('");
  }
  Cursor& c_;
};

}  // namespace detail

/// Parse `x^3 + 2*x^2 + 2*x + 2`-style text; products and parentheses are
/// allowed, `*` is optional.
inline IntPolynomial parse_polynomial(std::string_view text) {
  detail::Cursor c(text);
  if (c.at_end()) c.fail("empty polynomial");
  IntPolynomial p = detail::PolyParser(c).expr();
  c.expect_end();
  return p;
}

/// Canonical text: terms by decreasing degree, `*` between coefficient and x,
/// unit coefficients omitted, e.g. `x^3 + 2*x^2 - x + 2`.
inline std::string to_string(const IntPolynomial& g) {
  if (g.is_zero()) return "0";
  std::string out;
  for (int i = g.degree(); i >= 0; --i) {
    const Integer& c = g.coeffs()[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    bool neg = c < 0;
    Integer mag = abs(c);
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    std::string mono = i == 0 ? "" : (i == 1 ? "x" : "x^" + std::to_string(i));
    if (mono.empty())
      out += mag.get_str();
    else if (mag == 1)
      out += mono;
    else
      out += mag.get_str() + "*" + mono;
  }
  return out;
}

}  // namespace intval
