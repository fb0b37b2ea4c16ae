#include "mixmono/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>

#include "mixmono/errors.hpp"

namespace mixmono {

DecompositionSpec::DecompositionSpec(std::size_t m, std::size_t n, std::vector<SignCase> cases,
                                     std::vector<double> alpha, std::vector<double> beta, double epsilon)
    : m_(m), n_(n), cases_(std::move(cases)), alpha_(std::move(alpha)), beta_(std::move(beta)), epsilon_(epsilon) {
  const std::size_t count = m_ * n_;
  if (cases_.size() != count || alpha_.size() != count || beta_.size() != count) {
    throw DimensionError("DecompositionSpec: matrices must be m x n");
  }
  if (!(epsilon_ >= 0.0)) throw InvalidBoundsError("DecompositionSpec: epsilon must be >= 0");
}

Selector DecompositionSpec::selector(std::size_t i, std::size_t j) const {
  const SignCase c = sign_case(i, j);
  return (c == SignCase::Case1 || c == SignCase::Case2) ? Selector::FirstArg : Selector::SecondArg;
}

DecompositionSpec build_decomposition(const JacobianBounds& jb, double epsilon) {
  if (!(epsilon >= 0.0)) throw InvalidBoundsError("build_decomposition: epsilon must be >= 0");
  if (auto bad = jb.first_unbounded()) throw UnboundedDerivativeError(bad->first, bad->second);

  const std::size_t count = jb.rows() * jb.cols();
  std::vector<SignCase> cases(count);
  std::vector<double> alpha(count, 0.0);
  std::vector<double> beta(count, 0.0);
  for (std::size_t i = 0; i < jb.rows(); ++i) {
    for (std::size_t j = 0; j < jb.cols(); ++j) {
      const std::size_t k = i * jb.cols() + j;
      cases[k] = jb.sign_case(i, j);
      // Case2 has a finite a (a < 0 <= |a| <= |b|), Case3 a finite b.
      if (cases[k] == SignCase::Case2) alpha[k] = std::fabs(jb(i, j).lo()) + epsilon;
      if (cases[k] == SignCase::Case3) beta[k] = -std::fabs(jb(i, j).hi()) - epsilon;
    }
  }
  return DecompositionSpec(jb.rows(), jb.cols(), std::move(cases), std::move(alpha), std::move(beta), epsilon);
}

double eval_decomposition_component(const DecompositionSpec& spec, const VectorField& f, std::size_t i,
                                    std::span<const double> x, std::span<const double> y) {
  const std::size_t n = spec.cols();
  if (x.size() != n || y.size() != n || f.input_dim() != n || f.output_dim() != spec.rows()) {
    throw DimensionError("eval_decomposition: dimension mismatch");
  }
  Point z(n);
  double linear = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    z[j] = spec.selector(i, j) == Selector::FirstArg ? x[j] : y[j];
    const double c = spec.offset(i, j);
    if (c != 0.0) linear += c * (x[j] - y[j]);
  }
  return f.eval_component(i, z) + linear;
}

Point eval_decomposition(const DecompositionSpec& spec, const VectorField& f, std::span<const double> x,
                         std::span<const double> y) {
  Point out(spec.rows());
  for (std::size_t i = 0; i < spec.rows(); ++i) out[i] = eval_decomposition_component(spec, f, i, x, y);
  return out;
}

std::vector<Interval> bound_box(const DecompositionSpec& spec, const VectorField& f, const Box& box) {
  if (box.dim() != spec.cols()) throw DimensionError("bound_box: box dimension != n");
  const Point lo = box.lower();
  const Point hi = box.upper();
  std::vector<Interval> out;
  out.reserve(spec.rows());
  for (std::size_t i = 0; i < spec.rows(); ++i) {
    const double below = eval_decomposition_component(spec, f, i, lo, hi);
    const double above = eval_decomposition_component(spec, f, i, hi, lo);
    // below <= above up to rounding on (near-)degenerate boxes.
    out.emplace_back(std::min(below, above), std::max(below, above));
  }
  return out;
}

Expr decomposition_expr(const DecompositionSpec& spec, const VectorField& f, std::size_t i) {
  const std::size_t n = spec.cols();
  Expr g = substitute(f.component(i), [&](int k) {
    const std::size_t j = static_cast<std::size_t>(k - 1);
    return Expr::variable(spec.selector(i, j) == Selector::FirstArg ? k : static_cast<int>(n) + k);
  });
  for (std::size_t j = 0; j < n; ++j) {
    const double c = spec.offset(i, j);
    if (c == 0.0) continue;
    const int xj = static_cast<int>(j + 1);
    const int yj = static_cast<int>(n + j + 1);
    g = build::add(g, build::mul(Expr::constant(c), Expr::variable(xj)));
    g = build::sub(g, build::mul(Expr::constant(c), Expr::variable(yj)));
  }
  return g;
}

std::string format_decomposition(const DecompositionSpec& spec, const VectorField& f, std::size_t i, int precision) {
  const int n = static_cast<int>(spec.cols());
  PrintOptions opts;
  opts.precision = precision;
  opts.variable_name = [n](int k) { return k <= n ? "x" + std::to_string(k) : "y" + std::to_string(k - n); };
  return to_string(decomposition_expr(spec, f, i), opts);
}

namespace {

struct NodeResult {
  std::vector<Interval> bounds;
  // Row/column of an unbounded Jacobian entry when this box had no own bound.
  std::optional<std::pair<std::size_t, std::size_t>> unbounded;
};

NodeResult own_bound(const VectorField& f, const Box& box, const RefineOptions& opts, bool parallel) {
  const JacobianBounds jb =
      parallel ? jacobian_bounds(f, box, opts.jacobian) : serial::jacobian_bounds(f, box, opts.jacobian);
  if (auto bad = jb.first_unbounded()) {
    return {std::vector<Interval>(f.output_dim(), Interval::entire()), bad};
  }
  return {bound_box(build_decomposition(jb, opts.epsilon), f, box), std::nullopt};
}

std::vector<Interval> merge(const std::vector<Interval>& left, const std::vector<Interval>& right,
                            const std::vector<Interval>& parent) {
  std::vector<Interval> out;
  out.reserve(parent.size());
  for (std::size_t i = 0; i < parent.size(); ++i) {
    out.push_back(intersect(hull(left[i], right[i]), parent[i], parent[i]));
  }
  return out;
}

NodeResult refine_node(const VectorField& f, const Box& box, int depth, const RefineOptions& opts, bool parallel) {
  NodeResult own = own_bound(f, box, opts, parallel);
  if (depth == 0 || box.is_degenerate()) return own;

  auto [left_box, right_box] = split(box, box.widest_axis());
  NodeResult left;
  NodeResult right;
  if (parallel) {
    std::exception_ptr left_error;
#pragma omp task default(none) shared(f, left_box, opts, left, left_error) firstprivate(depth)
    {
      try {
        left = refine_node(f, left_box, depth - 1, opts, true);
      } catch (...) {
        left_error = std::current_exception();
      }
    }
    right = refine_node(f, right_box, depth - 1, opts, true);
#pragma omp taskwait
    if (left_error) std::rethrow_exception(left_error);
  } else {
    left = refine_node(f, left_box, depth - 1, opts, false);
    right = refine_node(f, right_box, depth - 1, opts, false);
  }
  own.bounds = merge(left.bounds, right.bounds, own.bounds);
  return own;
}

std::vector<Interval> finish(NodeResult result) {
  for (const auto& b : result.bounds) {
    if (!b.is_finite()) {
      const auto [i, j] = result.unbounded.value_or(std::pair<std::size_t, std::size_t>{0, 0});
      throw UnboundedDerivativeError(i, j);
    }
  }
  return std::move(result.bounds);
}

void check_refine_inputs(const VectorField& f, const Box& box, int depth) {
  if (depth < 0) throw InvalidBoundsError("refine_bounds: depth must be >= 0");
  if (box.dim() != f.input_dim()) throw DimensionError("refine_bounds: box dimension != n");
}

}  // namespace

std::vector<Interval> refine_bounds(const VectorField& f, const Box& box, int depth, const RefineOptions& opts) {
  check_refine_inputs(f, box, depth);
  if (depth == 0) return finish(own_bound(f, box, opts, true));
  NodeResult result;
  std::exception_ptr error;
#pragma omp parallel default(none) shared(f, box, depth, opts, result, error)
#pragma omp single
  {
    try {
      result = refine_node(f, box, depth, opts, true);
    } catch (...) {
      error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return finish(std::move(result));
}

namespace serial {

std::vector<Interval> refine_bounds(const VectorField& f, const Box& box, int depth, const RefineOptions& opts) {
  check_refine_inputs(f, box, depth);
  return finish(refine_node(f, box, depth, opts, false));
}

}  // namespace serial

}  // namespace mixmono
