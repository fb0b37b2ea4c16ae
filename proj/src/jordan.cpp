#include "mixmono/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "mixmono/errors.hpp"
#include "mixmono/quadrature.hpp"

namespace mixmono {

ScalarFunction::ScalarFunction(Expr expr, Interval domain)
    : expr_(std::move(expr)), derivative_(differentiate(expr_, 1)), domain_(domain), smooth_(!has_nonsmooth(expr_)) {
  if (max_variable_index(expr_) > 1) throw DimensionError("scalar function may only use x1");
}

ScalarFunction ScalarFunction::parse(std::string_view text, Interval domain) {
  return ScalarFunction(mixmono::parse(text, 1), domain);
}

double ScalarFunction::operator()(double x) const { return eval(expr_, std::span<const double>(&x, 1)); }

double ScalarFunction::slope(double x) const { return eval(derivative_, std::span<const double>(&x, 1)); }

namespace {

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

// [a, b] cut at the sign changes of f': zeros of f' on the scan grid are
// taken as they are, strict sign flips between nodes are bisected.
std::vector<double> sign_breakpoints(const ScalarFunction& f, double a, double b, const VariationOptions& opts) {
  std::vector<double> out{a};
  if (a < b) {
    const int cells = std::max(1, opts.scan_cells);
    const double h = (b - a) / cells;
    double t_prev = a;
    int s_prev = sign_of(f.slope(a));
    for (int k = 1; k <= cells; ++k) {
      const double t = (k == cells) ? b : a + h * k;
      const int s = sign_of(f.slope(t));
      if (s == 0 && k < cells) {
        out.push_back(t);
      } else if (s * s_prev < 0) {
        double lo = t_prev;
        double hi = t;
        while (hi - lo > opts.root_tol) {
          const double mid = 0.5 * (lo + hi);
          if (mid <= lo || mid >= hi) break;
          (sign_of(f.slope(mid)) == s_prev ? lo : hi) = mid;
        }
        out.push_back(0.5 * (lo + hi));
      }
      t_prev = t;
      s_prev = s;
    }
  }
  out.push_back(b);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct PieceVariation {
  double total = 0.0;
  double negative = 0.0;  // integral of max(-f', 0)
};

// Variation of a smooth f over [u, v], expected to be a piece on which f'
// keeps one sign. There the integral of |f'| is |f(v) - f(u)|; a quadrature
// of |f'| guards against a sign change the scan grid missed.
PieceVariation piece_variation(const ScalarFunction& f, double u, double v, double tol) {
  if (u >= v) return {};
  const double d = f(v) - f(u);
  const QuadratureResult q = integrate([&](double t) { return std::fabs(f.slope(t)); }, u, v, 0.5 * tol);
  if (!q.converged) throw NonConvergenceError("quadrature of |f'| did not converge");
  if (q.value <= std::fabs(d) + tol) return {std::fabs(d), d < 0.0 ? -d : 0.0};

  const QuadratureResult neg =
      integrate([&](double t) { return std::max(-f.slope(t), 0.0); }, u, v, 0.5 * tol);
  if (!neg.converged) throw NonConvergenceError("quadrature of max(-f', 0) did not converge");
  return {q.value, neg.value};
}

// Sums piece variations of [a, b] cut at `breakpoints`.
PieceVariation smooth_variation(const ScalarFunction& f, const std::vector<double>& breakpoints, double a, double b,
                                double tol) {
  PieceVariation sum;
  if (a >= b) return sum;
  std::vector<double> cuts{a};
  for (double t : breakpoints) {
    if (t > a && t < b) cuts.push_back(t);
  }
  cuts.push_back(b);
  const double share = tol / static_cast<double>(cuts.size() - 1);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const PieceVariation p = piece_variation(f, cuts[k], cuts[k + 1], share);
    sum.total += p.total;
    sum.negative += p.negative;
  }
  return sum;
}

// Golden-section search for the extremum of f in [lo, hi]; `maximize`
// selects a maximum or a minimum.
double locate_extremum(const ScalarFunction& f, double lo, double hi, bool maximize, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  auto better = [&](double fa, double fb) { return maximize ? fa > fb : fa < fb; };
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > tol) {
    if (better(fc, fd)) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
    if (!(c > lo && d < hi)) break;
  }
  return 0.5 * (lo + hi);
}

// Partition sums over dyadic grids of [a, b]. Each grid is augmented with
// the extrema bracketed by its discrete local extrema; adding points to a
// partition never lowers its sum, so every estimate is a genuine partition
// sum. Stops when two successive levels differ by less than tol.
double partition_variation(const ScalarFunction& f, double a, double b, const VariationOptions& opts, double tol) {
  if (a >= b) return 0.0;
  constexpr int kMinLevel = 6;
  std::vector<double> values{f(a), f(b)};
  std::vector<std::pair<double, double>> points;
  double previous = std::fabs(values[1] - values[0]);
  for (int level = 1; level <= opts.max_partition_level; ++level) {
    const std::size_t cells = std::size_t{1} << level;
    const double h = (b - a) / static_cast<double>(cells);
    auto node = [&](std::size_t k) { return k == cells ? b : a + h * static_cast<double>(k); };
    std::vector<double> next(cells + 1);
    for (std::size_t k = 0; k <= cells; ++k) next[k] = (k % 2 == 0) ? values[k / 2] : f(node(k));
    values = std::move(next);

    points.clear();
    for (std::size_t k = 0; k <= cells; ++k) points.emplace_back(node(k), values[k]);
    for (std::size_t k = 1; k < cells; ++k) {
      const bool peak = values[k] > values[k - 1] && values[k] > values[k + 1];
      const bool pit = values[k] < values[k - 1] && values[k] < values[k + 1];
      if (!peak && !pit) continue;
      const double t = locate_extremum(f, node(k - 1), node(k + 1), peak, opts.root_tol);
      points.emplace_back(t, f(t));
    }
    std::sort(points.begin(), points.end());

    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < points.size(); ++k) sum += std::fabs(points[k + 1].second - points[k].second);
    if (level >= kMinLevel && std::fabs(sum - previous) < tol) return sum;
    previous = sum;
  }
  throw NonConvergenceError("total variation partition sums did not settle");
}

void require_subinterval(const ScalarFunction& f, const Interval& sub) {
  if (!sub.is_finite()) throw InvalidBoundsError("total variation needs a finite interval");
  if (!sub.subset_of(f.domain())) throw InvalidBoundsError("interval lies outside the function's domain");
}

}  // namespace

double total_variation(const ScalarFunction& f, const Interval& sub, const VariationOptions& opts) {
  require_subinterval(f, sub);
  if (!(opts.tol > 0.0)) throw InvalidBoundsError("total_variation: tol must be > 0");
  if (sub.is_point()) return 0.0;
  if (!f.smooth()) return partition_variation(f, sub.lo(), sub.hi(), opts, opts.tol);
  const auto breakpoints = sign_breakpoints(f, sub.lo(), sub.hi(), opts);
  return smooth_variation(f, breakpoints, sub.lo(), sub.hi(), opts.tol).total;
}

JordanSplit::JordanSplit(ScalarFunction f, const VariationOptions& opts) : f_(std::move(f)), opts_(opts) {
  const Interval& dom = f_.domain();
  if (!dom.is_finite()) throw InvalidBoundsError("Jordan split needs a finite domain");
  if (!(opts_.tol > 0.0)) throw InvalidBoundsError("JordanSplit: tol must be > 0");
  if (f_.smooth()) breakpoints_ = sign_breakpoints(f_, dom.lo(), dom.hi(), opts_);

  const int cells = std::max(1, opts_.split_cells);
  const double h = dom.width() / cells;
  nodes_.resize(cells + 1);
  for (int k = 0; k <= cells; ++k) nodes_[k] = (k == cells) ? dom.hi() : dom.lo() + h * k;
  prefix_.assign(cells + 1, 0.0);
  const double cell_tol = opts_.tol / cells;
  for (int k = 0; k < cells; ++k) prefix_[k + 1] = prefix_[k] + variation(nodes_[k], nodes_[k + 1], cell_tol);
}

double JordanSplit::variation(double a, double b, double tol) const {
  if (f_.smooth()) return smooth_variation(f_, breakpoints_, a, b, tol).total;
  return partition_variation(f_, a, b, opts_, tol);
}

double JordanSplit::positive(double x) const {
  if (!f_.domain().contains(x)) throw InvalidBoundsError("JordanSplit: point outside domain");
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  const std::size_t k = static_cast<std::size_t>(std::distance(nodes_.begin(), it)) - 1;
  if (nodes_[k] == x) return prefix_[k];
  return prefix_[k] + variation(nodes_[k], x, opts_.tol / static_cast<double>(nodes_.size() - 1));
}

double JordanSplit::negative(double x) const { return f_(x) - positive(x); }

BvDecomposition::BvDecomposition(ScalarFunction f, const VariationOptions& opts) : split_(std::move(f), opts) {
  const ScalarFunction& fn = split_.function();
  if (fn.smooth()) breakpoints_ = sign_breakpoints(fn, fn.domain().lo(), fn.domain().hi(), opts);
}

double BvDecomposition::split_form(double x, double y) const { return split_.positive(x) + split_.negative(y); }

double BvDecomposition::negative_variation(double a, double b) const {
  return smooth_variation(split_.function(), breakpoints_, a, b, split_.tolerance()).negative;
}

double BvDecomposition::integral_form(double x, double y) const {
  const ScalarFunction& f = split_.function();
  if (!f.smooth()) throw EvalError("integral form needs a continuously differentiable expression");
  if (!f.domain().contains(x) || !f.domain().contains(y)) {
    throw InvalidBoundsError("BvDecomposition: point outside domain");
  }
  const double signed_negative = x >= y ? negative_variation(y, x) : -negative_variation(x, y);
  return f(x) + 2.0 * signed_negative;
}

double BvDecomposition::operator()(double x, double y) const {
  return split_.function().smooth() ? integral_form(x, y) : split_form(x, y);
}

Interval BvDecomposition::bounds() const { return bounds(split_.function().domain()); }

Interval BvDecomposition::bounds(const Interval& sub) const {
  const double below = (*this)(sub.lo(), sub.hi());
  const double above = (*this)(sub.hi(), sub.lo());
  return Interval(std::min(below, above), std::max(below, above));
}

double bv_decomposition_eval(const ScalarFunction& f, double x, double y, const VariationOptions& opts) {
  return BvDecomposition(f, opts)(x, y);
}

UnboundedDecomposition::UnboundedDecomposition(Expr f, const VariationOptions& opts)
    : f_(std::move(f), Interval::entire()), opts_(opts), offset_(f_(0.0)) {}

double UnboundedDecomposition::g1(double x) const {
  if (!std::isfinite(x)) throw InvalidBoundsError("unbounded decomposition needs finite arguments");
  if (x >= 0.0) return total_variation(f_, Interval(0.0, x), opts_);
  return (f_(x) - offset_) - total_variation(f_, Interval(x, 0.0), opts_);
}

double UnboundedDecomposition::g2(double y) const {
  if (!std::isfinite(y)) throw InvalidBoundsError("unbounded decomposition needs finite arguments");
  if (y >= 0.0) return (f_(y) - offset_) - total_variation(f_, Interval(0.0, y), opts_);
  return total_variation(f_, Interval(y, 0.0), opts_);
}

double unbounded_decomposition(const Expr& f, double x, double y, const VariationOptions& opts) {
  return UnboundedDecomposition(f, opts)(x, y);
}

}  // namespace mixmono
