#include "symdiff/parser.hpp"

#include <algorithm>
#include <cctype>

namespace symdiff {

namespace {

enum class Tok { Int, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t column;
};

class Parser {
public:
  Parser(const RingPtr& ring, std::string_view text, std::size_t line, std::size_t column)
      : ring_(ring), text_(text), line_(line), column_(column) {
    advance();
  }

  Polynomial parse() {
    auto p = expr();
    if (cur_.kind != Tok::End) unexpected();
    return p;
  }

private:
  [[noreturn]] void fail(const std::string& msg, std::size_t col, ErrorCode code = ErrorCode::ParseError) const {
    throw ParseError(code, msg, line_, column_ + col);
  }

  [[noreturn]] void unexpected() const {
    if (cur_.kind == Tok::End) fail("unexpected end of expression", cur_.column);
    fail("unexpected '" + std::string(cur_.text) + "'", cur_.column);
  }

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::size_t start = pos_;
    if (pos_ == text_.size()) {
      cur_ = {Tok::End, {}, start};
      return;
    }
    const char c = text_[pos_];
    auto single = [&](Tok k) {
      ++pos_;
      cur_ = {k, text_.substr(start, 1), start};
    };
    switch (c) {
    case '+': return single(Tok::Plus);
    case '-': return single(Tok::Minus);
    case '*': return single(Tok::Star);
    case '/': return single(Tok::Slash);
    case '^': return single(Tok::Caret);
    case '(': return single(Tok::LParen);
    case ')': return single(Tok::RParen);
    default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      cur_ = {Tok::Int, text_.substr(start, pos_ - start), start};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      cur_ = {Tok::Ident, text_.substr(start, pos_ - start), start};
      return;
    }
    fail("unexpected character '" + std::string(1, c) + "'", start);
  }

  Polynomial expr() {
    auto acc = term();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      const bool minus = cur_.kind == Tok::Minus;
      advance();
      auto rhs = term();
      acc = minus ? acc - rhs : acc + rhs;
    }
    return acc;
  }

  Polynomial term() {
    auto acc = unary();
    while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
      const bool div = cur_.kind == Tok::Slash;
      const auto col = cur_.column;
      advance();
      auto rhs = unary();
      if (!div) {
        acc = acc * rhs;
        continue;
      }
      if (!rhs.is_constant()) fail("division by a non-constant", col);
      const auto c = rhs.constant_term();
      if (c.is_zero()) fail("division by zero", col, ErrorCode::DivisionByZero);
      try {
        acc = (Scalar::one(ring_->domain) / c) * acc;
      } catch (const Error& e) {
        fail(e.what(), col, e.code());
      }
    }
    return acc;
  }

  Polynomial unary() {
    if (cur_.kind == Tok::Minus) {
      advance();
      return -unary();
    }
    return power();
  }

  Polynomial power() {
    auto base = primary();
    if (cur_.kind == Tok::Caret) {
      advance();
      if (cur_.kind != Tok::Int) fail("exponent must be a non-negative integer", cur_.column);
      const auto col = cur_.column;
      unsigned long e = 0;
      try {
        e = std::stoul(std::string(cur_.text));
      } catch (const std::exception&) {
        fail("exponent too large", col);
      }
      if (e > 100000) fail("exponent too large", col);
      advance();
      base = base.pow(static_cast<unsigned>(e));
      if (cur_.kind == Tok::Caret) fail("chained '^' is ambiguous; use parentheses", cur_.column);
    }
    if (cur_.kind == Tok::Int || cur_.kind == Tok::Ident || cur_.kind == Tok::LParen)
      fail("implicit multiplication is not allowed; use '*'", cur_.column);
    return base;
  }

  Polynomial primary() {
    const auto tok = cur_;
    switch (tok.kind) {
    case Tok::Int: {
      advance();
      return Polynomial::constant(ring_, Scalar::from_int(ring_->domain, mpz_class(std::string(tok.text))));
    }
    case Tok::Ident: {
      advance();
      const auto& vars = ring_->vars;
      if (auto it = std::find(vars.begin(), vars.end(), tok.text); it != vars.end())
        return Polynomial::variable(ring_, static_cast<std::size_t>(it - vars.begin()));
      if (tok.text == "t" && ring_->domain.has_t())
        return Polynomial::constant(ring_, Scalar::parameter(ring_->domain));
      fail("undeclared variable '" + std::string(tok.text) + "'", tok.column, ErrorCode::UndeclaredVariable);
    }
    case Tok::LParen: {
      advance();
      auto inner = expr();
      if (cur_.kind != Tok::RParen) fail("expected ')'", cur_.column);
      advance();
      return inner;
    }
    default: unexpected();
    }
  }

  const RingPtr& ring_;
  std::string_view text_;
  std::size_t line_;
  std::size_t column_;
  std::size_t pos_ = 0;
  Token cur_{Tok::End, {}, 0};
};

} // namespace

Polynomial parse_polynomial(const RingPtr& ring, std::string_view text, std::size_t line, std::size_t column) {
  return Parser(ring, text, line, column).parse();
}

} // namespace symdiff
