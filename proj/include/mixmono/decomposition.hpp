#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mixmono/expr.hpp"
#include "mixmono/interval.hpp"
#include "mixmono/jacobian.hpp"

namespace mixmono {

// Which argument of g(x, y) feeds coordinate j of z in f_i(z).
enum class Selector { FirstArg, SecondArg };

// Decomposition function built from Jacobian sign cases:
//
//   g_i(x, y) = f_i(z_i) + sum_j (alpha_ij - beta_ij) (x_j - y_j)
//
// with (z_i)_j = x_j for Case1/Case2 entries and y_j for Case3/Case4,
// alpha_ij = |a_ij| + eps on Case2 entries (else 0), and
// beta_ij = -|b_ij| - eps on Case3 entries (else 0).
//
// Each output row i carries its own selector row.
class DecompositionSpec {
 public:
  DecompositionSpec(std::size_t m, std::size_t n, std::vector<SignCase> cases, std::vector<double> alpha,
                    std::vector<double> beta, double epsilon);

  std::size_t rows() const noexcept { return m_; }
  std::size_t cols() const noexcept { return n_; }
  double epsilon() const noexcept { return epsilon_; }

  SignCase sign_case(std::size_t i, std::size_t j) const { return cases_.at(i * n_ + j); }
  Selector selector(std::size_t i, std::size_t j) const;
  double alpha(std::size_t i, std::size_t j) const { return alpha_.at(i * n_ + j); }
  double beta(std::size_t i, std::size_t j) const { return beta_.at(i * n_ + j); }
  // alpha_ij - beta_ij, the coefficient of (x_j - y_j) in g_i.
  double offset(std::size_t i, std::size_t j) const { return alpha(i, j) - beta(i, j); }

  friend bool operator==(const DecompositionSpec&, const DecompositionSpec&) = default;

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<SignCase> cases_;
  std::vector<double> alpha_;
  std::vector<double> beta_;
  double epsilon_;
};

// Throws UnboundedDerivativeError naming the first (-inf, inf) entry.
DecompositionSpec build_decomposition(const JacobianBounds& jb, double epsilon = 0.0);

Point eval_decomposition(const DecompositionSpec& spec, const VectorField& f, std::span<const double> x,
                         std::span<const double> y);

double eval_decomposition_component(const DecompositionSpec& spec, const VectorField& f, std::size_t i,
                                    std::span<const double> x, std::span<const double> y);

// [g_i(lower, upper), g_i(upper, lower)] for each output i.
std::vector<Interval> bound_box(const DecompositionSpec& spec, const VectorField& f, const Box& box);

// g_i as an expression over 2n variables: indices 1..n are x, n+1..2n are y.
Expr decomposition_expr(const DecompositionSpec& spec, const VectorField& f, std::size_t i);

// Human-readable g_i, e.g. "x1^2 + 2*x1 - 2*y1".
std::string format_decomposition(const DecompositionSpec& spec, const VectorField& f, std::size_t i,
                                 int precision = 9);

struct RefineOptions {
  double epsilon = 0.0;
  JacobianOptions jacobian{};
};

// Depth 0: decomposition bound on the whole box. Depth d > 0: bisect the
// widest axis, refine each half at depth d - 1 with fresh Jacobian bounds,
// hull the halves and intersect with the depth-0 bound of this box. A half
// whose Jacobian is unbounded falls back to its parent's bound. The two
// halves are processed as OpenMP tasks.
std::vector<Interval> refine_bounds(const VectorField& f, const Box& box, int depth, const RefineOptions& opts = {});

namespace serial {
std::vector<Interval> refine_bounds(const VectorField& f, const Box& box, int depth, const RefineOptions& opts = {});
}  // namespace serial

}  // namespace mixmono
