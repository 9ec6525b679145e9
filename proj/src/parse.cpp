// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

#include <charconv>
#include <limits>
#include <optional>

#include "derivekit/expr.hpp"
#include "parser.hpp"

namespace derivekit {

namespace {

bool ident_start(char ch) {
  const auto c = static_cast<unsigned char>(ch);
  return c >= 0x80 || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool ident_char(char ch) { return ident_start(ch) || (ch >= '0' && ch <= '9'); }

bool is_digit(char ch) { return ch >= '0' && ch <= '9'; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) { check_balance(); }

  Expr expression() {
    Expr first = term(false);
    std::vector<Expr> terms{first};
    for (;;) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        terms.push_back(term(false));
      } else if (peek() == '-') {
        ++pos_;
        terms.push_back(term(true));
      } else {
        break;
      }
    }
    return terms.size() == 1 ? terms.front() : sum(std::move(terms));
  }

  // Optional "^(k)" suffix on an equation LHS.
  std::uint32_t lhs_index() {
    skip_ws();
    if (peek() != '^') return 0;
    ++pos_;
    expect('(');
    skip_ws();
    const auto at = pos_;
    const auto value = integer_literal();
    if (value < 0 || value > std::numeric_limits<std::uint32_t>::max()) {
      fail("LHS index out of range", at);
    }
    expect(')');
    return static_cast<std::uint32_t>(value);
  }

  void expect(char ch) {
    skip_ws();
    if (peek() != ch) {
      if (at_end()) fail(std::string("expected '") + ch + "' but input ended", pos_);
      fail(std::string("expected '") + ch + "'", pos_);
    }
    ++pos_;
  }

  void expect_end() {
    skip_ws();
    if (!at_end()) fail("unexpected trailing input", pos_);
  }

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw ParseError(msg, at + 1);
  }

  [[nodiscard]] std::size_t pos() const { return pos_; }

 private:
  Expr term(bool negate_first) {
    std::vector<Expr> factors{nc(negate_first)};
    for (;;) {
      skip_ws();
      // "**" belongs to power(), so a lone '*' only.
      if (peek() == '*' && peek(1) != '*') {
        ++pos_;
        factors.push_back(nc(false));
      } else if (peek() == '/') {
        ++pos_;
        factors.push_back(power(nc(false), integer(-1)));
      } else {
        break;
      }
    }
    return factors.size() == 1 ? factors.front() : product(std::move(factors));
  }

  Expr nc(bool negate_first) {
    std::vector<Expr> factors{unary(negate_first)};
    for (;;) {
      skip_ws();
      if (peek() != '@') break;
      ++pos_;
      factors.push_back(unary(false));
    }
    return factors.size() == 1 ? factors.front() : nc_product(std::move(factors));
  }

  Expr unary(bool negate_result) {
    skip_ws();
    Expr inner;
    if (peek() == '-') {
      ++pos_;
      inner = negate(unary(false));
    } else {
      inner = power_expr();
    }
    return negate_result ? negate(inner) : inner;
  }

  Expr power_expr() {
    Expr base = atom();
    skip_ws();
    if (peek() == '*' && peek(1) == '*') {
      pos_ += 2;
      return power(std::move(base), unary(false));
    }
    return base;
  }

  Expr atom() {
    skip_ws();
    const auto start = pos_;
    if (at_end()) fail("unexpected end of input", pos_);
    const char ch = peek();
    if (is_digit(ch)) {
      const auto value = integer_literal();
      if (peek() == '.') fail("floating-point literals are not supported", pos_);
      return integer(value);
    }
    if (ch == '?') {
      ++pos_;
      return placeholder();
    }
    if (ch == '(') {
      ++pos_;
      Expr inner = expression();
      expect(')');
      return inner;
    }
    if (ident_start(ch)) {
      while (!at_end() && ident_char(peek())) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      skip_ws();
      if (peek() == '(') {
        ++pos_;
        if (name == "Rational") return rational_literal(start);
        std::vector<Expr> args{expression()};
        for (;;) {
          skip_ws();
          if (peek() == ',') {
            ++pos_;
            args.push_back(expression());
          } else {
            break;
          }
        }
        expect(')');
        try {
          return function(std::move(name), std::move(args));
        } catch (const std::invalid_argument& e) {
          fail(e.what(), start);
        }
      }
      try {
        return symbol(std::move(name));
      } catch (const std::invalid_argument& e) {
        fail(e.what(), start);
      }
    }
    fail(std::string("unexpected character '") + ch + "'", pos_);
  }

  Expr rational_literal(std::size_t start) {
    auto signed_int = [&] {
      skip_ws();
      bool neg = false;
      if (peek() == '-') {
        neg = true;
        ++pos_;
        skip_ws();
      }
      const auto v = integer_literal();
      return neg ? -v : v;
    };
    const auto p = signed_int();
    expect(',');
    const auto q = signed_int();
    expect(')');
    if (q == 0) fail("Rational with zero denominator", start);
    const Rational r(p, q);
    if (r.is_integer()) fail("Rational literal must not be an integer", start);
    return number(r);
  }

  std::int64_t integer_literal() {
    const auto start = pos_;
    while (!at_end() && is_digit(peek())) ++pos_;
    if (start == pos_) fail("expected integer", start);
    std::int64_t value = 0;
    const auto* first = text_.data() + start;
    const auto* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) fail("integer literal out of range", start);
    return value;
  }

  void check_balance() const {
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < text_.size(); ++i) {
      if (text_[i] == '(') open.push_back(i);
      if (text_[i] == ')') {
        if (open.empty()) fail("unbalanced ')'", i);
        open.pop_back();
      }
    }
    if (!open.empty()) fail("unbalanced '('", open.back());
  }

  void skip_ws() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\n' || peek() == '\r')) {
      ++pos_;
    }
  }
  [[nodiscard]] bool at_end() const { return pos_ >= text_.size(); }
  [[nodiscard]] char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

bool blank(std::string_view text) {
  return text.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

}  // namespace

Expr parse(std::string_view text) {
  if (blank(text)) throw ParseError("empty input", 1);
  Parser p(text);
  Expr e = p.expression();
  p.expect_end();
  return e;
}

namespace detail {

ParsedEquation parse_state_tuple(std::string_view text) {
  if (blank(text)) throw ParseError("empty input", 1);
  Parser p(text);
  p.expect('(');
  ParsedEquation out;
  out.lhs = p.expression();
  out.lhs_index = p.lhs_index();
  p.expect(',');
  out.rhs = p.expression();
  p.expect(')');
  p.expect_end();
  return out;
}

ParsedEquation parse_equation_line(std::string_view text) {
  if (blank(text)) throw ParseError("empty input", 1);
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) throw ParseError("expected '='", text.size() + 1);
  if (text.find('=', eq + 1) != std::string_view::npos) {
    throw ParseError("more than one '='", text.find('=', eq + 1) + 1);
  }
  ParsedEquation out;
  {
    Parser p(text.substr(0, eq));
    out.lhs = p.expression();
    out.lhs_index = p.lhs_index();
    p.expect_end();
  }
  try {
    out.rhs = parse(text.substr(eq + 1));
  } catch (const ParseError& e) {
    // Re-anchor the position on the full line.
    std::string msg = e.what();
    if (auto at = msg.rfind(" at position "); at != std::string::npos) msg.resize(at);
    throw ParseError(msg, e.position() + eq + 1);
  }
  return out;
}

}  // namespace detail

}  // namespace derivekit
