#include "mixmono/jacobian.hpp"

#include <cmath>
#include <exception>

#include "mixmono/errors.hpp"

namespace mixmono {

VectorField::VectorField(std::size_t n, std::vector<Expr> components)
    : n_(n), components_(std::move(components)) {
  if (n_ == 0) throw DimensionError("vector field needs at least one input");
  if (components_.empty()) throw DimensionError("vector field needs at least one component");
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (static_cast<std::size_t>(max_variable_index(components_[i])) > n_) {
      throw DimensionError("component f" + std::to_string(i + 1) + " uses a variable beyond x" +
                           std::to_string(n_));
    }
  }
  jacobian_.reserve(components_.size() * n_);
  for (const auto& c : components_) {
    for (std::size_t j = 0; j < n_; ++j) jacobian_.push_back(differentiate(c, static_cast<int>(j + 1)));
  }
}

VectorField VectorField::parse(std::size_t n, const std::vector<std::string>& components) {
  std::vector<Expr> exprs;
  exprs.reserve(components.size());
  for (const auto& text : components) exprs.push_back(mixmono::parse(text, n));
  return VectorField(n, std::move(exprs));
}

Point VectorField::operator()(std::span<const double> x) const {
  if (x.size() != n_) throw DimensionError("vector field evaluated at a point of wrong dimension");
  Point out(components_.size());
  for (std::size_t i = 0; i < components_.size(); ++i) out[i] = eval(components_[i], x);
  return out;
}

double VectorField::eval_component(std::size_t i, std::span<const double> x) const {
  if (x.size() != n_) throw DimensionError("vector field evaluated at a point of wrong dimension");
  return eval(components_.at(i), x);
}

std::string_view to_string(SignCase c) {
  switch (c) {
    case SignCase::Case1:
      return "case1";
    case SignCase::Case2:
      return "case2";
    case SignCase::Case3:
      return "case3";
    case SignCase::Case4:
      return "case4";
  }
  return "?";
}

SignCase classify(double a, double b) {
  if (std::isnan(a) || std::isnan(b) || !(a < b)) {
    throw InvalidBoundsError("classify: need a < b");
  }
  if (std::isinf(a) && std::isinf(b)) throw InvalidBoundsError("classify: (-inf, inf) has no sign case");
  if (a >= 0.0) return SignCase::Case1;
  if (b <= 0.0) return SignCase::Case4;
  return std::fabs(a) <= std::fabs(b) ? SignCase::Case2 : SignCase::Case3;
}

JacobianBounds::JacobianBounds(std::size_t m, std::size_t n, std::vector<Interval> entries)
    : m_(m), n_(n), entries_(std::move(entries)) {
  if (entries_.size() != m_ * n_) throw DimensionError("JacobianBounds: entry count != m*n");
}

std::optional<std::pair<std::size_t, std::size_t>> JacobianBounds::first_unbounded() const {
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (entries_[k].is_entire()) return std::pair{k / n_, k % n_};
  }
  return std::nullopt;
}

SignCase JacobianBounds::sign_case(std::size_t i, std::size_t j) const {
  if (is_unbounded(i, j)) throw UnboundedDerivativeError(i, j);
  const Interval& e = (*this)(i, j);
  return classify(e.lo(), e.hi());
}

namespace {

Interval entry_bound(const VectorField& f, const Box& box, const JacobianOptions& opts, std::size_t k) {
  const std::size_t n = f.input_dim();
  return eval_interval(f.partial(k / n, k % n), box, opts.interval).widen(opts.slack);
}

void check_inputs(const VectorField& f, const Box& box, const JacobianOptions& opts) {
  if (box.dim() != f.input_dim()) throw DimensionError("jacobian_bounds: box dimension != n");
  if (!(opts.slack >= 0.0)) throw InvalidBoundsError("jacobian_bounds: slack must be >= 0");
}

}  // namespace

JacobianBounds jacobian_bounds(const VectorField& f, const Box& box, const JacobianOptions& opts) {
  check_inputs(f, box, opts);
  const std::size_t count = f.output_dim() * f.input_dim();
  std::vector<Interval> entries(count);
  std::vector<std::exception_ptr> errors(count);

#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < count; ++k) {
    try {
      entries[k] = entry_bound(f, box, opts, k);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  // Rethrow the lowest-index failure so errors match the serial order.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return JacobianBounds(f.output_dim(), f.input_dim(), std::move(entries));
}

namespace serial {

JacobianBounds jacobian_bounds(const VectorField& f, const Box& box, const JacobianOptions& opts) {
  check_inputs(f, box, opts);
  const std::size_t count = f.output_dim() * f.input_dim();
  std::vector<Interval> entries;
  entries.reserve(count);
  for (std::size_t k = 0; k < count; ++k) entries.push_back(entry_bound(f, box, opts, k));
  return JacobianBounds(f.output_dim(), f.input_dim(), std::move(entries));
}

}  // namespace serial

}  // namespace mixmono
