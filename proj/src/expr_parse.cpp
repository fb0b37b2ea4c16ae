// Recursive-descent parser for the expression grammar:
//
//   expr   := term (("+" | "-") term)*
//   term   := factor (("*" | "/") factor)*
//   factor := ["-"] atom ["^" integer]
//   atom   := number | "pi" | "x" integer | func "(" expr ["," expr] ")" | "(" expr ")"
//   func   := sin | cos | exp | abs | sign | min | max
//
// "^" binds tighter than the unary minus, so "-x1^2" is -(x1^2).

#include <cctype>
#include <charconv>
#include <limits>
#include <numbers>
#include <string>

#include "mixmono/errors.hpp"
#include "mixmono/expr.hpp"

namespace mixmono {

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t dim) : text_(text), dim_(dim) {}

  Expr parse_all() {
    Expr e = parse_expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(Op::Add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = Expr::binary(Op::Sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_factor();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(Op::Mul, lhs, parse_factor());
      } else if (accept('/')) {
        lhs = Expr::binary(Op::Div, lhs, parse_factor());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_factor() {
    const bool negate = accept('-');
    Expr e = parse_atom();
    if (accept('^')) {
      skip_space();
      e = Expr::pow(e, parse_integer("exponent"));
    }
    return negate ? Expr::unary(Op::Neg, e) : e;
  }

  int parse_integer(const char* what) {
    const std::size_t start = pos_;
    int value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec == std::errc::result_out_of_range) fail(std::string(what) + " out of range");
    if (ec != std::errc() || text_[start] == '-' || text_[start] == '+') {
      fail(std::string("expected integer ") + what);
    }
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  Expr parse_atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    auto is_digit = [&](std::size_t i) {
      return i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]));
    };
    std::size_t end = pos_;
    while (is_digit(end)) ++end;
    if (end < text_.size() && text_[end] == '.') {
      ++end;
      while (is_digit(end)) ++end;
    }
    if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
      std::size_t exp_end = end + 1;
      if (exp_end < text_.size() && (text_[exp_end] == '+' || text_[exp_end] == '-')) ++exp_end;
      if (is_digit(exp_end)) {
        while (is_digit(exp_end)) ++exp_end;
        end = exp_end;
      }
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + end, value);
    if (ec != std::errc() || ptr != text_.data() + end) fail("malformed number");
    pos_ = end;
    return Expr::constant(value);
  }

  Expr parse_name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);

    if (name == "x") {
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        fail("expected variable index after 'x'");
      }
      const int index = parse_integer("variable index");
      if (index < 1 || static_cast<std::size_t>(index) > dim_) {
        throw DimensionError("variable x" + std::to_string(index) + " at byte " + std::to_string(start) +
                             " outside dimension " + std::to_string(dim_));
      }
      return Expr::variable(index);
    }
    if (name == "pi") return Expr::constant(std::numbers::pi);

    Op op;
    int arity = 1;
    if (name == "sin") {
      op = Op::Sin;
    } else if (name == "cos") {
      op = Op::Cos;
    } else if (name == "exp") {
      op = Op::Exp;
    } else if (name == "abs") {
      op = Op::Abs;
    } else if (name == "sign") {
      op = Op::Sign;
    } else if (name == "min") {
      op = Op::Min;
      arity = 2;
    } else if (name == "max") {
      op = Op::Max;
      arity = 2;
    } else {
      pos_ = start;
      fail("unknown identifier '" + std::string(name) + "'");
    }

    expect('(');
    Expr first = parse_expr();
    if (arity == 2) {
      expect(',');
      Expr second = parse_expr();
      expect(')');
      return Expr::binary(op, first, second);
    }
    expect(')');
    return Expr::unary(op, first);
  }

  std::string_view text_;
  std::size_t dim_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, std::size_t dim) { return Parser(text, dim).parse_all(); }

}  // namespace mixmono
