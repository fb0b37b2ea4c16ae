#include "mixmono/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "mixmono/errors.hpp"

namespace mixmono {

std::size_t grid_points_per_axis(std::size_t total, std::size_t dim) {
  if (dim == 0) return 1;
  auto k = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(total), 1.0 / static_cast<double>(dim))));
  k = std::max<std::size_t>(k, 2);
  auto covers = [&](std::size_t c) {
    double p = 1.0;
    for (std::size_t i = 0; i < dim; ++i) p *= static_cast<double>(c);
    return p >= static_cast<double>(total);
  };
  while (!covers(k)) ++k;
  return k;
}

namespace {

struct Grid {
  const Box& box;
  std::size_t per_axis;

  std::size_t size() const {
    std::size_t s = 1;
    for (std::size_t i = 0; i < box.dim(); ++i) s *= per_axis;
    return s;
  }

  void node(std::size_t flat, Point& out) const {
    for (std::size_t i = 0; i < box.dim(); ++i) {
      const std::size_t k = flat % per_axis;
      flat /= per_axis;
      const Interval& c = box[i];
      out[i] = (k + 1 == per_axis) ? c.hi() : c.lo() + c.width() * static_cast<double>(k) / static_cast<double>(per_axis - 1);
    }
  }
};

void check_grid(const VectorField& f, const Box& box, std::size_t per_axis) {
  if (box.dim() != f.input_dim()) throw DimensionError("grid_range: box dimension != n");
  if (per_axis < 2) throw InvalidBoundsError("grid_range: need at least 2 nodes per axis");
}

std::vector<Interval> to_intervals(const std::vector<double>& lo, const std::vector<double>& hi) {
  std::vector<Interval> out;
  out.reserve(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) out.emplace_back(lo[i], hi[i]);
  return out;
}

}  // namespace

std::vector<Interval> grid_range(const VectorField& f, const Box& box, std::size_t per_axis) {
  check_grid(f, box, per_axis);
  const Grid grid{box, per_axis};
  const std::size_t m = f.output_dim();
  const std::size_t count = grid.size();
  std::vector<double> lo(m, kInf);
  std::vector<double> hi(m, -kInf);
  std::exception_ptr error;

#pragma omp parallel
  {
    std::vector<double> local_lo(m, kInf);
    std::vector<double> local_hi(m, -kInf);
    Point p(box.dim());
#pragma omp for schedule(static)
    for (std::size_t k = 0; k < count; ++k) {
      try {
        grid.node(k, p);
        for (std::size_t i = 0; i < m; ++i) {
          const double v = f.eval_component(i, p);
          local_lo[i] = std::min(local_lo[i], v);
          local_hi[i] = std::max(local_hi[i], v);
        }
      } catch (...) {
#pragma omp critical(mixmono_grid_error)
        if (!error) error = std::current_exception();
      }
    }
#pragma omp critical(mixmono_grid_merge)
    for (std::size_t i = 0; i < m; ++i) {
      lo[i] = std::min(lo[i], local_lo[i]);
      hi[i] = std::max(hi[i], local_hi[i]);
    }
  }
  if (error) std::rethrow_exception(error);
  return to_intervals(lo, hi);
}

std::vector<std::vector<Point>> sample_flows(const VectorField& f, const std::vector<Point>& initial, double t_end,
                                             double step, const IntegrationOptions& opts) {
  std::vector<std::vector<Point>> out(initial.size());
  std::vector<std::exception_ptr> errors(initial.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < initial.size(); ++k) {
    try {
      out[k] = sample_trajectory(f, initial[k], t_end, step, opts);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

namespace serial {

std::vector<Interval> grid_range(const VectorField& f, const Box& box, std::size_t per_axis) {
  check_grid(f, box, per_axis);
  const Grid grid{box, per_axis};
  const std::size_t m = f.output_dim();
  std::vector<double> lo(m, kInf);
  std::vector<double> hi(m, -kInf);
  Point p(box.dim());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    grid.node(k, p);
    for (std::size_t i = 0; i < m; ++i) {
      const double v = f.eval_component(i, p);
      lo[i] = std::min(lo[i], v);
      hi[i] = std::max(hi[i], v);
    }
  }
  return to_intervals(lo, hi);
}

std::vector<std::vector<Point>> sample_flows(const VectorField& f, const std::vector<Point>& initial, double t_end,
                                             double step, const IntegrationOptions& opts) {
  std::vector<std::vector<Point>> out;
  out.reserve(initial.size());
  for (const auto& x0 : initial) out.push_back(sample_trajectory(f, x0, t_end, step, opts));
  return out;
}

}  // namespace serial

}  // namespace mixmono
