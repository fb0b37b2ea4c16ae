#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace mixmono {

using Point = std::vector<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Closed interval on the extended real line. lo <= hi always holds, and the
// interval is never a single infinite point ([inf, inf] or [-inf, -inf]).
//
// Arithmetic does not round outward; callers that need soundness under
// rounding widen the result with `widen`.
class Interval {
 public:
  constexpr Interval() = default;
  explicit Interval(double point);
  Interval(double lo, double hi);

  static Interval entire() { return Interval(-kInf, kInf); }

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

  double width() const noexcept { return hi_ - lo_; }
  double mid() const noexcept { return lo_ + 0.5 * (hi_ - lo_); }
  double mag() const noexcept;

  bool is_finite() const noexcept;
  bool is_entire() const noexcept { return lo_ == -kInf && hi_ == kInf; }
  bool is_point() const noexcept { return lo_ == hi_; }
  bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }
  bool contains_zero() const noexcept { return lo_ <= 0.0 && 0.0 <= hi_; }
  bool subset_of(const Interval& other) const noexcept {
    return other.lo_ <= lo_ && hi_ <= other.hi_;
  }

  Interval widen(double amount) const;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

Interval hull(const Interval& a, const Interval& b);

// Intersection of two intervals known to enclose a common nonempty set.
// When rounding makes them appear disjoint, `fallback` is returned.
Interval intersect(const Interval& a, const Interval& b, const Interval& fallback);

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
Interval operator*(double s, const Interval& a);

enum class DivisionMode {
  Extended,  // x / [.. 0 ..] gives (-inf, inf)
  Strict,    // x / [.. 0 ..] throws EvalError
};
Interval divide(const Interval& a, const Interval& b, DivisionMode mode = DivisionMode::Extended);

// Tight integer power: even exponents map intervals straddling 0 to [0, .].
Interval pow(const Interval& a, int exponent);

Interval sin(const Interval& a);
Interval cos(const Interval& a);
Interval exp(const Interval& a);
Interval abs(const Interval& a);
Interval sign(const Interval& a);
Interval min(const Interval& a, const Interval& b);
Interval max(const Interval& a, const Interval& b);

std::ostream& operator<<(std::ostream& os, const Interval& x);

// Axis-aligned box X = { x : lower <= x <= upper } with finite corners.
class Box {
 public:
  Box() = default;
  explicit Box(std::vector<Interval> components);
  Box(std::span<const double> lower, std::span<const double> upper);

  std::size_t dim() const noexcept { return components_.size(); }
  const Interval& operator[](std::size_t i) const { return components_[i]; }
  const std::vector<Interval>& components() const noexcept { return components_; }

  Point lower() const;
  Point upper() const;
  Point center() const;
  bool contains(std::span<const double> p) const;

  // Widest axis; ties go to the lowest index.
  std::size_t widest_axis() const;
  bool is_degenerate() const;

  friend bool operator==(const Box&, const Box&) = default;

 private:
  std::vector<Interval> components_;
};

// Componentwise order induced by the positive orthant.
bool leq_orthant(std::span<const double> p, std::span<const double> q);

// Bisects `box` at the midpoint of `axis` (0-based).
std::pair<Box, Box> split(const Box& box, std::size_t axis);

Box hull(const Box& a, const Box& b);

std::ostream& operator<<(std::ostream& os, const Box& box);

}  // namespace mixmono
