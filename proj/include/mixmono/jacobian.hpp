#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mixmono/expr.hpp"
#include "mixmono/interval.hpp"

namespace mixmono {

// f : R^n -> R^m given by m component expressions over x1..xn. The m x n
// symbolic Jacobian is derived once at construction.
class VectorField {
 public:
  VectorField(std::size_t n, std::vector<Expr> components);

  // Parses each component against dimension n.
  static VectorField parse(std::size_t n, const std::vector<std::string>& components);

  std::size_t input_dim() const noexcept { return n_; }
  std::size_t output_dim() const noexcept { return components_.size(); }
  bool is_square() const noexcept { return n_ == components_.size(); }

  const Expr& component(std::size_t i) const { return components_.at(i); }
  const std::vector<Expr>& components() const noexcept { return components_; }
  // d f_i / d x_j, 0-based i and j.
  const Expr& partial(std::size_t i, std::size_t j) const { return jacobian_.at(i * n_ + j); }

  Point operator()(std::span<const double> x) const;
  double eval_component(std::size_t i, std::span<const double> x) const;

 private:
  std::size_t n_;
  std::vector<Expr> components_;
  std::vector<Expr> jacobian_;
};

// The four sign cases of a derivative enclosure (a, b):
//   Case1  a >= 0                 sign-stable positive
//   Case2  a < 0 < b, |a| <= |b|  sign-unstable, mostly positive
//   Case3  a < 0 < b, |a| >  |b|  sign-unstable, mostly negative
//   Case4  b <= 0                 sign-stable negative
enum class SignCase { Case1, Case2, Case3, Case4 };

std::string_view to_string(SignCase c);

// Classifies the open interval (a, b). Requires a < b and (a, b) != (-inf, inf);
// throws InvalidBoundsError otherwise. Ties |a| == |b| go to Case2.
SignCase classify(double a, double b);

inline constexpr double kDefaultJacobianSlack = 1e-10;

struct JacobianOptions {
  double slack = kDefaultJacobianSlack;
  IntervalOptions interval{};
};

// m x n matrix of open intervals (a_ij, b_ij) enclosing d f_i / d x_j over a
// box. An entry equal to (-inf, inf) is kept but flagged unbounded.
class JacobianBounds {
 public:
  JacobianBounds(std::size_t m, std::size_t n, std::vector<Interval> entries);

  std::size_t rows() const noexcept { return m_; }
  std::size_t cols() const noexcept { return n_; }
  const Interval& operator()(std::size_t i, std::size_t j) const { return entries_.at(i * n_ + j); }
  const std::vector<Interval>& entries() const noexcept { return entries_; }

  bool is_unbounded(std::size_t i, std::size_t j) const { return (*this)(i, j).is_entire(); }
  // First unbounded entry in row-major order, if any.
  std::optional<std::pair<std::size_t, std::size_t>> first_unbounded() const;

  SignCase sign_case(std::size_t i, std::size_t j) const;

  friend bool operator==(const JacobianBounds&, const JacobianBounds&) = default;

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<Interval> entries_;
};

// Entry (i, j) = eval_interval(d f_i / d x_j, box) widened by `slack`.
// Entries are computed in parallel with OpenMP.
JacobianBounds jacobian_bounds(const VectorField& f, const Box& box, const JacobianOptions& opts = {});

namespace serial {
// Single-threaded reference for jacobian_bounds; results are identical.
JacobianBounds jacobian_bounds(const VectorField& f, const Box& box, const JacobianOptions& opts = {});
}  // namespace serial

}  // namespace mixmono
