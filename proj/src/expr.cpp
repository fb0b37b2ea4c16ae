#include "mixmono/expr.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "mixmono/errors.hpp"

namespace mixmono {

struct Expr::Node {
  Op op = Op::Constant;
  double value = 0.0;
  int index = 0;
  Expr lhs;
  Expr rhs;
};

bool is_unary(Op op) noexcept {
  switch (op) {
    case Op::Neg:
    case Op::Sin:
    case Op::Cos:
    case Op::Exp:
    case Op::Abs:
    case Op::Sign:
    case Op::Pow:
      return true;
    default:
      return false;
  }
}

bool is_binary(Op op) noexcept {
  switch (op) {
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div:
    case Op::Min:
    case Op::Max:
      return true;
    default:
      return false;
  }
}

// The zero constant has to be built without going through Expr() to avoid
// recursing into the default constructor of Node::lhs.
Expr::Expr() {
  static const std::shared_ptr<const Node> zero = [] {
    auto n = std::make_shared<Node>(Node{Op::Constant, 0.0, 0, Expr(nullptr), Expr(nullptr)});
    return std::shared_ptr<const Node>(std::move(n));
  }();
  node_ = zero;
}

Expr Expr::constant(double value) {
  return Expr(std::make_shared<const Node>(Node{Op::Constant, value, 0, Expr(nullptr), Expr(nullptr)}));
}

Expr Expr::variable(int index) {
  if (index < 1) throw DimensionError("variable index must be >= 1");
  return Expr(std::make_shared<const Node>(Node{Op::Variable, 0.0, index, Expr(nullptr), Expr(nullptr)}));
}

Expr Expr::unary(Op op, Expr arg) {
  if (!is_unary(op) || op == Op::Pow) throw std::invalid_argument("Expr::unary: not a unary op");
  return Expr(std::make_shared<const Node>(Node{op, 0.0, 0, std::move(arg), Expr(nullptr)}));
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
  if (!is_binary(op)) throw std::invalid_argument("Expr::binary: not a binary op");
  return Expr(std::make_shared<const Node>(Node{op, 0.0, 0, std::move(lhs), std::move(rhs)}));
}

Expr Expr::pow(Expr base, int exponent) {
  return Expr(std::make_shared<const Node>(Node{Op::Pow, 0.0, exponent, std::move(base), Expr(nullptr)}));
}

Op Expr::op() const noexcept { return node_->op; }
double Expr::value() const noexcept { return node_->value; }
int Expr::index() const noexcept { return node_->index; }

const Expr& Expr::arg(std::size_t k) const { return k == 0 ? node_->lhs : node_->rhs; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Op::Constant:
      return a.value() == b.value();
    case Op::Variable:
      return a.index() == b.index();
    case Op::Pow:
      return a.index() == b.index() && a.arg(0) == b.arg(0);
    default:
      if (is_binary(a.op())) return a.arg(0) == b.arg(0) && a.arg(1) == b.arg(1);
      return a.arg(0) == b.arg(0);
  }
}

namespace {

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw EvalError(std::string("non-finite value in ") + what);
  return v;
}

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

double eval(const Expr& e, std::span<const double> p) {
  switch (e.op()) {
    case Op::Constant:
      return e.value();
    case Op::Variable:
      if (static_cast<std::size_t>(e.index()) > p.size()) {
        throw DimensionError("variable x" + std::to_string(e.index()) + " outside point dimension");
      }
      return checked(p[e.index() - 1], "variable");
    case Op::Neg:
      return -eval(e.arg(), p);
    case Op::Sin:
      return std::sin(eval(e.arg(), p));
    case Op::Cos:
      return std::cos(eval(e.arg(), p));
    case Op::Exp:
      return checked(std::exp(eval(e.arg(), p)), "exp");
    case Op::Abs:
      return std::fabs(eval(e.arg(), p));
    case Op::Sign:
      return sgn(eval(e.arg(), p));
    case Op::Pow:
      return checked(std::pow(eval(e.arg(), p), e.index()), "pow");
    case Op::Add:
      return checked(eval(e.arg(0), p) + eval(e.arg(1), p), "add");
    case Op::Sub:
      return checked(eval(e.arg(0), p) - eval(e.arg(1), p), "sub");
    case Op::Mul:
      return checked(eval(e.arg(0), p) * eval(e.arg(1), p), "mul");
    case Op::Div: {
      const double num = eval(e.arg(0), p);
      const double den = eval(e.arg(1), p);
      if (den == 0.0) throw EvalError("division by zero");
      return checked(num / den, "div");
    }
    case Op::Min:
      return std::min(eval(e.arg(0), p), eval(e.arg(1), p));
    case Op::Max:
      return std::max(eval(e.arg(0), p), eval(e.arg(1), p));
  }
  throw std::logic_error("eval: unknown op");
}

namespace build {

Expr add(Expr a, Expr b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() + b.value());
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  return Expr::binary(Op::Add, std::move(a), std::move(b));
}

Expr sub(Expr a, Expr b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() - b.value());
  if (b.is_constant(0.0)) return a;
  if (a.is_constant(0.0)) return neg(std::move(b));
  return Expr::binary(Op::Sub, std::move(a), std::move(b));
}

Expr mul(Expr a, Expr b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() * b.value());
  if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr();
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  if (a.is_constant(-1.0)) return neg(std::move(b));
  if (b.is_constant(-1.0)) return neg(std::move(a));
  // c1 * (c2 * u) -> (c1 c2) * u
  if (a.is_constant() && b.op() == Op::Mul && b.arg(0).is_constant()) {
    return mul(Expr::constant(a.value() * b.arg(0).value()), b.arg(1));
  }
  return Expr::binary(Op::Mul, std::move(a), std::move(b));
}

Expr div(Expr a, Expr b) {
  if (a.is_constant(0.0)) return Expr();
  if (b.is_constant(1.0)) return a;
  if (a.is_constant() && b.is_constant() && b.value() != 0.0) {
    return Expr::constant(a.value() / b.value());
  }
  return Expr::binary(Op::Div, std::move(a), std::move(b));
}

Expr neg(Expr a) {
  if (a.is_constant()) return Expr::constant(-a.value());
  if (a.op() == Op::Neg) return a.arg();
  return Expr::unary(Op::Neg, std::move(a));
}

Expr pow(Expr a, int n) {
  if (n == 0) return Expr::constant(1.0);
  if (n == 1) return a;
  if (a.is_constant()) return Expr::constant(std::pow(a.value(), n));
  return Expr::pow(std::move(a), n);
}

}  // namespace build

namespace {

// (1 + sign(w)) / 2: 1 for w > 0, 1/2 at 0, 0 for w < 0.
Expr half_step(Expr w) {
  return build::mul(Expr::constant(0.5),
                    build::add(Expr::constant(1.0), Expr::unary(Op::Sign, std::move(w))));
}

}  // namespace

Expr differentiate(const Expr& e, int j) {
  using namespace build;
  switch (e.op()) {
    case Op::Constant:
    case Op::Sign:
      return Expr();
    case Op::Variable:
      return Expr::constant(e.index() == j ? 1.0 : 0.0);
    case Op::Neg:
      return neg(differentiate(e.arg(), j));
    case Op::Sin:
      return mul(Expr::unary(Op::Cos, e.arg()), differentiate(e.arg(), j));
    case Op::Cos:
      return mul(neg(Expr::unary(Op::Sin, e.arg())), differentiate(e.arg(), j));
    case Op::Exp:
      return mul(e, differentiate(e.arg(), j));
    case Op::Abs:
      return mul(Expr::unary(Op::Sign, e.arg()), differentiate(e.arg(), j));
    case Op::Pow: {
      const int n = e.index();
      if (n == 0) return Expr();
      return mul(mul(Expr::constant(n), build::pow(e.arg(), n - 1)), differentiate(e.arg(), j));
    }
    case Op::Add:
      return add(differentiate(e.arg(0), j), differentiate(e.arg(1), j));
    case Op::Sub:
      return sub(differentiate(e.arg(0), j), differentiate(e.arg(1), j));
    case Op::Mul:
      return add(mul(differentiate(e.arg(0), j), e.arg(1)), mul(e.arg(0), differentiate(e.arg(1), j)));
    case Op::Div: {
      const Expr& u = e.arg(0);
      const Expr& v = e.arg(1);
      return div(sub(mul(differentiate(u, j), v), mul(u, differentiate(v, j))), build::pow(v, 2));
    }
    case Op::Min:
    case Op::Max: {
      const Expr& u = e.arg(0);
      const Expr& v = e.arg(1);
      // For min, u is selected when v - u > 0; for max when u - v > 0.
      Expr u_wins = e.op() == Op::Min ? Expr::binary(Op::Sub, v, u) : Expr::binary(Op::Sub, u, v);
      Expr v_wins = e.op() == Op::Min ? Expr::binary(Op::Sub, u, v) : Expr::binary(Op::Sub, v, u);
      return add(mul(half_step(std::move(u_wins)), differentiate(u, j)),
                 mul(half_step(std::move(v_wins)), differentiate(v, j)));
    }
  }
  throw std::logic_error("differentiate: unknown op");
}

Expr substitute(const Expr& e, const std::function<Expr(int)>& replacement) {
  switch (e.op()) {
    case Op::Constant:
      return e;
    case Op::Variable:
      return replacement(e.index());
    case Op::Pow:
      return Expr::pow(substitute(e.arg(), replacement), e.index());
    default:
      if (is_binary(e.op())) {
        return Expr::binary(e.op(), substitute(e.arg(0), replacement), substitute(e.arg(1), replacement));
      }
      return Expr::unary(e.op(), substitute(e.arg(), replacement));
  }
}

int max_variable_index(const Expr& e) {
  switch (e.op()) {
    case Op::Constant:
      return 0;
    case Op::Variable:
      return e.index();
    default:
      if (is_binary(e.op())) return std::max(max_variable_index(e.arg(0)), max_variable_index(e.arg(1)));
      return max_variable_index(e.arg());
  }
}

bool has_nonsmooth(const Expr& e) {
  switch (e.op()) {
    case Op::Constant:
    case Op::Variable:
      return false;
    case Op::Abs:
    case Op::Sign:
    case Op::Min:
    case Op::Max:
      return true;
    default:
      if (is_binary(e.op())) return has_nonsmooth(e.arg(0)) || has_nonsmooth(e.arg(1));
      return has_nonsmooth(e.arg());
  }
}

std::string format_number(double v, int precision) {
  char buf[64];
  if (v == 0.0) v = 0.0;  // no "-0"
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

namespace {

constexpr int kPrecAdd = 1;
constexpr int kPrecMul = 2;
constexpr int kPrecNeg = 3;
constexpr int kPrecPow = 4;
constexpr int kPrecAtom = 5;

int precedence(const Expr& e) {
  switch (e.op()) {
    case Op::Add:
    case Op::Sub:
      return kPrecAdd;
    case Op::Mul:
    case Op::Div:
      return kPrecMul;
    case Op::Neg:
      return kPrecNeg;
    case Op::Pow:
      return kPrecPow;
    case Op::Constant:
      return std::signbit(e.value()) ? kPrecNeg : kPrecAtom;
    default:
      return kPrecAtom;
  }
}

const char* function_name(Op op) {
  switch (op) {
    case Op::Sin:
      return "sin";
    case Op::Cos:
      return "cos";
    case Op::Exp:
      return "exp";
    case Op::Abs:
      return "abs";
    case Op::Sign:
      return "sign";
    case Op::Min:
      return "min";
    case Op::Max:
      return "max";
    default:
      return "";
  }
}

class Printer {
 public:
  explicit Printer(const PrintOptions& opts) : opts_(opts) {}

  std::string print(const Expr& e) const {
    switch (e.op()) {
      case Op::Constant:
        return format_number(e.value(), opts_.precision);
      case Op::Variable:
        return opts_.variable_name ? opts_.variable_name(e.index()) : "x" + std::to_string(e.index());
      case Op::Neg:
        return "-" + wrap(e.arg(), precedence(e.arg()) < kPrecPow);
      case Op::Pow:
        return wrap(e.arg(), precedence(e.arg()) < kPrecAtom) + "^" + std::to_string(e.index());
      case Op::Add:
      case Op::Sub: {
        const char* sym = e.op() == Op::Add ? " + " : " - ";
        return print(e.arg(0)) + sym + wrap(e.arg(1), precedence(e.arg(1)) <= kPrecAdd || is_negative(e.arg(1)));
      }
      case Op::Mul:
      case Op::Div: {
        const char* sym = e.op() == Op::Mul ? "*" : "/";
        return wrap(e.arg(0), precedence(e.arg(0)) < kPrecMul) + sym +
               wrap(e.arg(1), precedence(e.arg(1)) <= kPrecMul || is_negative(e.arg(1)));
      }
      case Op::Min:
      case Op::Max:
        return std::string(function_name(e.op())) + "(" + print(e.arg(0)) + ", " + print(e.arg(1)) + ")";
      default:
        return std::string(function_name(e.op())) + "(" + print(e.arg()) + ")";
    }
  }

 private:
  static bool is_negative(const Expr& e) { return precedence(e) == kPrecNeg; }

  std::string wrap(const Expr& e, bool parens) const {
    return parens ? "(" + print(e) + ")" : print(e);
  }

  const PrintOptions& opts_;
};

}  // namespace

std::string to_string(const Expr& e, const PrintOptions& opts) { return Printer(opts).print(e); }

}  // namespace mixmono
