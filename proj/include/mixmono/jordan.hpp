#pragma once

#include <string_view>
#include <vector>

#include "mixmono/expr.hpp"
#include "mixmono/interval.hpp"

namespace mixmono {

// Real function of x1 on a domain interval. The domain may be unbounded
// (only the whole-line decomposition accepts that).
class ScalarFunction {
 public:
  ScalarFunction(Expr expr, Interval domain);
  static ScalarFunction parse(std::string_view text, Interval domain);

  const Expr& expr() const noexcept { return expr_; }
  const Expr& derivative() const noexcept { return derivative_; }
  const Interval& domain() const noexcept { return domain_; }
  // False when the expression holds abs/sign/min/max.
  bool smooth() const noexcept { return smooth_; }

  double operator()(double x) const;
  double slope(double x) const;

 private:
  Expr expr_;
  Expr derivative_;
  Interval domain_;
  bool smooth_;
};

struct VariationOptions {
  double tol = 1e-8;
  // Sign changes of f' are located on a scan grid of this many cells and
  // then bisected down to root_tol.
  int scan_cells = 1 << 10;
  double root_tol = 1e-12;
  // Dyadic partition path: give up after 2^max_partition_level cells.
  int max_partition_level = 22;
  // Cells of the cached f+ grid used by JordanSplit.
  int split_cells = 64;
};

// Total variation of f over `sub`. Smooth expressions integrate |f'| between
// the sign changes of f'; expressions with abs/min/max refine dyadic
// partition sums until successive estimates differ by less than tol.
// Throws NonConvergenceError when neither settles.
double total_variation(const ScalarFunction& f, const Interval& sub, const VariationOptions& opts = {});

// f = f+ + f- with f+(x) = TV(f, [lo, x]) nondecreasing and f- = f - f+
// nonincreasing. TV is cached on a fixed grid of the domain; a query adds
// the variation between the nearest grid node and x, so no interpolation
// is involved. Immutable after construction.
class JordanSplit {
 public:
  explicit JordanSplit(ScalarFunction f, const VariationOptions& opts = {});

  double positive(double x) const;
  double negative(double x) const;
  double tolerance() const noexcept { return opts_.tol; }
  const ScalarFunction& function() const noexcept { return f_; }

 private:
  double variation(double a, double b, double tol) const;

  ScalarFunction f_;
  VariationOptions opts_;
  std::vector<double> breakpoints_;  // smooth path: domain split at sign changes of f'
  std::vector<double> nodes_;
  std::vector<double> prefix_;  // prefix_[k] = TV(f, [lo, nodes_[k]])
};

// Decomposition g(x, y) of a bounded-variation scalar function:
//   split form     g(x, y) = f+(x) + f-(y)
//   integral form  g(x, y) = f(x) + 2 * integral_y^x |f'(t)| [f'(t) < 0] dt
// The two agree for continuously differentiable f. operator() uses the
// integral form for smooth expressions and the split form otherwise.
class BvDecomposition {
 public:
  explicit BvDecomposition(ScalarFunction f, const VariationOptions& opts = {});

  double operator()(double x, double y) const;
  double split_form(double x, double y) const;
  // Requires a smooth expression; throws EvalError otherwise.
  double integral_form(double x, double y) const;

  // [g(lo, hi), g(hi, lo)] over the domain.
  Interval bounds() const;
  // Same on a sub-interval of the domain.
  Interval bounds(const Interval& sub) const;

  const JordanSplit& split() const noexcept { return split_; }

 private:
  // integral of max(-f', 0) over [a, b], a <= b
  double negative_variation(double a, double b) const;

  JordanSplit split_;
  std::vector<double> breakpoints_;
};

double bv_decomposition_eval(const ScalarFunction& f, double x, double y, const VariationOptions& opts = {});

// Decomposition of f on the whole real line, assembled around 0 after
// subtracting f(0):
//   x >= 0: g1(x) = TV(f, [0, x])           g2(x) = f(x) - f(0) - TV(f, [0, x])
//   x <= 0: g1(x) = f(x) - f(0) - TV(f, [x, 0])   g2(x) = TV(f, [x, 0])
// and g(x, y) = g1(x) + g2(y) + f(0).
class UnboundedDecomposition {
 public:
  explicit UnboundedDecomposition(Expr f, const VariationOptions& opts = {});

  double g1(double x) const;
  double g2(double y) const;
  double operator()(double x, double y) const { return g1(x) + g2(y) + offset_; }
  double offset() const noexcept { return offset_; }

 private:
  ScalarFunction f_;
  VariationOptions opts_;
  double offset_;
};

double unbounded_decomposition(const Expr& f, double x, double y, const VariationOptions& opts = {});

}  // namespace mixmono
