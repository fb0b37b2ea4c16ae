#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "mixmono/interval.hpp"

namespace mixmono {

enum class Op {
  Constant,
  Variable,
  // unary
  Neg,
  Sin,
  Cos,
  Exp,
  Abs,
  Sign,  // produced by differentiation of abs/min/max; sign(0) = 0
  // binary
  Add,
  Sub,
  Mul,
  Div,
  Min,
  Max,
  // integer power; exponent stored exactly
  Pow,
};

bool is_unary(Op op) noexcept;
bool is_binary(Op op) noexcept;

// Immutable expression tree over variables x1..xn (1-based indices).
// Copies share nodes; every operation on Expr is pure.
class Expr {
 public:
  // The constant 0.
  Expr();

  static Expr constant(double value);
  static Expr variable(int index);
  static Expr unary(Op op, Expr arg);
  static Expr binary(Op op, Expr lhs, Expr rhs);
  static Expr pow(Expr base, int exponent);

  Op op() const noexcept;
  double value() const noexcept;  // Constant only
  int index() const noexcept;     // Variable index, or Pow exponent
  const Expr& arg(std::size_t k = 0) const;

  bool is_constant() const noexcept { return op() == Op::Constant; }
  bool is_constant(double v) const noexcept { return is_constant() && value() == v; }

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Parses `text` against the expression grammar. Variables x_k must satisfy
// 1 <= k <= dim. Throws SyntaxError (with byte offset) or DimensionError.
Expr parse(std::string_view text, std::size_t dim);

// Real evaluation. Throws EvalError on division by zero or a non-finite
// intermediate, DimensionError if a variable index exceeds p.size().
double eval(const Expr& e, std::span<const double> p);

// Partial derivative with respect to x_j (1-based). Non-smooth nodes use
// d|u| = sign(u) du with sign(0) = 0, and for min/max the half-step
// convention: d min(u,v)/du = 1 if u < v, 1/2 if u == v, 0 otherwise.
Expr differentiate(const Expr& e, int j);

struct IntervalOptions {
  // Absolute widening applied to the final enclosure of any expression that
  // depends on a variable. Stands in for outward rounding.
  double slack = 1e-12;
  DivisionMode division = DivisionMode::Extended;
};

// Natural interval extension over `box`. Variable-free expressions are
// evaluated pointwise and returned without slack.
Interval eval_interval(const Expr& e, const Box& box, const IntervalOptions& opts = {});

// Replaces every x_k with replacement(k).
Expr substitute(const Expr& e, const std::function<Expr(int)>& replacement);

// Highest variable index used, or 0 for a constant expression.
int max_variable_index(const Expr& e);

// True if the tree holds an abs, sign, min or max node.
bool has_nonsmooth(const Expr& e);

struct PrintOptions {
  // printf-style significant digits for constants; 17 round-trips doubles.
  int precision = 17;
  std::function<std::string(int)> variable_name;  // default: "x<k>"
};

// Minimal-parenthesis rendering that parses back to the same tree (for trees
// whose constants are nonnegative, i.e. anything `parse` produces).
std::string to_string(const Expr& e, const PrintOptions& opts = {});

std::string format_number(double v, int precision);

// Simplifying constructors used by differentiate: fold constants and drop
// additive zeros and multiplicative ones.
namespace build {
Expr add(Expr a, Expr b);
Expr sub(Expr a, Expr b);
Expr mul(Expr a, Expr b);
Expr div(Expr a, Expr b);
Expr neg(Expr a);
Expr pow(Expr a, int n);
}  // namespace build

}  // namespace mixmono
