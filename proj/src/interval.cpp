#include "mixmono/interval.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "mixmono/errors.hpp"

namespace mixmono {

namespace {

// Product with the interval convention 0 * inf = 0.
double mul_ext(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// True if some t = phase + 2*pi*k lies in [lo, hi].
bool contains_periodic_point(double lo, double hi, double phase) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double k = std::ceil((lo - phase) / two_pi);
  return phase + two_pi * k <= hi;
}

}  // namespace

Interval::Interval(double point) : Interval(point, point) {}

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi) {
    throw InvalidBoundsError("invalid interval: lo must not exceed hi");
  }
  if ((lo == kInf) || (hi == -kInf)) {
    throw InvalidBoundsError("invalid interval: single infinite point");
  }
}

double Interval::mag() const noexcept { return std::max(std::fabs(lo_), std::fabs(hi_)); }

bool Interval::is_finite() const noexcept { return std::isfinite(lo_) && std::isfinite(hi_); }

Interval Interval::widen(double amount) const { return Interval(lo_ - amount, hi_ + amount); }

Interval hull(const Interval& a, const Interval& b) {
  return Interval(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

Interval intersect(const Interval& a, const Interval& b, const Interval& fallback) {
  const double lo = std::max(a.lo(), b.lo());
  const double hi = std::min(a.hi(), b.hi());
  if (lo > hi) return fallback;
  return Interval(lo, hi);
}

Interval operator+(const Interval& a, const Interval& b) {
  return Interval(a.lo() + b.lo(), a.hi() + b.hi());
}

Interval operator-(const Interval& a, const Interval& b) {
  return Interval(a.lo() - b.hi(), a.hi() - b.lo());
}

Interval operator-(const Interval& a) { return Interval(-a.hi(), -a.lo()); }

Interval operator*(const Interval& a, const Interval& b) {
  const double p[4] = {mul_ext(a.lo(), b.lo()), mul_ext(a.lo(), b.hi()),
                       mul_ext(a.hi(), b.lo()), mul_ext(a.hi(), b.hi())};
  return Interval(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
}

Interval operator*(double s, const Interval& a) { return Interval(s) * a; }

Interval divide(const Interval& a, const Interval& b, DivisionMode mode) {
  if (b.contains_zero()) {
    if (mode == DivisionMode::Strict) {
      throw EvalError("interval division by an interval containing 0");
    }
    return Interval::entire();
  }
  const Interval reciprocal(1.0 / b.hi(), 1.0 / b.lo());
  return a * reciprocal;
}

Interval pow(const Interval& a, int exponent) {
  if (exponent == 0) return Interval(1.0);
  if (exponent < 0) return divide(Interval(1.0), pow(a, -exponent));
  const double plo = std::pow(a.lo(), exponent);
  const double phi = std::pow(a.hi(), exponent);
  if (exponent % 2 != 0) return Interval(plo, phi);
  if (a.contains_zero()) return Interval(0.0, std::max(plo, phi));
  return Interval(std::min(plo, phi), std::max(plo, phi));
}

Interval sin(const Interval& a) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  if (!a.is_finite() || a.width() >= 2.0 * std::numbers::pi) return Interval(-1.0, 1.0);
  const double slo = std::sin(a.lo());
  const double shi = std::sin(a.hi());
  double lo = std::min(slo, shi);
  double hi = std::max(slo, shi);
  if (contains_periodic_point(a.lo(), a.hi(), half_pi)) hi = 1.0;
  if (contains_periodic_point(a.lo(), a.hi(), -half_pi)) lo = -1.0;
  return Interval(std::max(lo, -1.0), std::min(hi, 1.0));
}

Interval cos(const Interval& a) {
  if (!a.is_finite() || a.width() >= 2.0 * std::numbers::pi) return Interval(-1.0, 1.0);
  const double clo = std::cos(a.lo());
  const double chi = std::cos(a.hi());
  double lo = std::min(clo, chi);
  double hi = std::max(clo, chi);
  if (contains_periodic_point(a.lo(), a.hi(), 0.0)) hi = 1.0;
  if (contains_periodic_point(a.lo(), a.hi(), std::numbers::pi)) lo = -1.0;
  return Interval(std::max(lo, -1.0), std::min(hi, 1.0));
}

Interval exp(const Interval& a) { return Interval(std::exp(a.lo()), std::exp(a.hi())); }

Interval abs(const Interval& a) {
  if (a.lo() >= 0.0) return a;
  if (a.hi() <= 0.0) return -a;
  return Interval(0.0, std::max(-a.lo(), a.hi()));
}

Interval sign(const Interval& a) { return Interval(sgn(a.lo()), sgn(a.hi())); }

Interval min(const Interval& a, const Interval& b) {
  return Interval(std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
}

Interval max(const Interval& a, const Interval& b) {
  return Interval(std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

std::ostream& operator<<(std::ostream& os, const Interval& x) {
  return os << '[' << x.lo() << ", " << x.hi() << ']';
}

Box::Box(std::vector<Interval> components) : components_(std::move(components)) {
  for (const auto& c : components_) {
    if (!c.is_finite()) throw InvalidBoundsError("box components must be finite");
  }
}

Box::Box(std::span<const double> lower, std::span<const double> upper) {
  if (lower.size() != upper.size()) throw DimensionError("box corners differ in dimension");
  components_.reserve(lower.size());
  for (std::size_t i = 0; i < lower.size(); ++i) {
    components_.emplace_back(lower[i], upper[i]);
    if (!components_.back().is_finite()) throw InvalidBoundsError("box components must be finite");
  }
}

Point Box::lower() const {
  Point p(dim());
  for (std::size_t i = 0; i < dim(); ++i) p[i] = components_[i].lo();
  return p;
}

Point Box::upper() const {
  Point p(dim());
  for (std::size_t i = 0; i < dim(); ++i) p[i] = components_[i].hi();
  return p;
}

Point Box::center() const {
  Point p(dim());
  for (std::size_t i = 0; i < dim(); ++i) p[i] = components_[i].mid();
  return p;
}

bool Box::contains(std::span<const double> p) const {
  if (p.size() != dim()) throw DimensionError("point and box differ in dimension");
  for (std::size_t i = 0; i < dim(); ++i) {
    if (!components_[i].contains(p[i])) return false;
  }
  return true;
}

std::size_t Box::widest_axis() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < dim(); ++i) {
    if (components_[i].width() > components_[best].width()) best = i;
  }
  return best;
}

bool Box::is_degenerate() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const Interval& c) { return c.is_point(); });
}

bool leq_orthant(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw DimensionError("leq_orthant: dimension mismatch");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] <= q[i])) return false;
  }
  return true;
}

std::pair<Box, Box> split(const Box& box, std::size_t axis) {
  if (axis >= box.dim()) throw DimensionError("split: axis out of range");
  const Interval& c = box[axis];
  if (c.width() <= 0.0) throw DegenerateAxisError("split: axis has zero width");
  const double m = c.mid();
  auto left = box.components();
  auto right = box.components();
  left[axis] = Interval(c.lo(), m);
  right[axis] = Interval(m, c.hi());
  return {Box(std::move(left)), Box(std::move(right))};
}

Box hull(const Box& a, const Box& b) {
  if (a.dim() != b.dim()) throw DimensionError("hull: dimension mismatch");
  std::vector<Interval> out;
  out.reserve(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out.push_back(hull(a[i], b[i]));
  return Box(std::move(out));
}

std::ostream& operator<<(std::ostream& os, const Box& box) {
  for (std::size_t i = 0; i < box.dim(); ++i) {
    if (i) os << " x ";
    os << box[i];
  }
  return os;
}

}  // namespace mixmono
