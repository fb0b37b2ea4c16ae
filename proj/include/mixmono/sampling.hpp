#pragma once

#include <cstddef>
#include <vector>

#include "mixmono/embedding.hpp"
#include "mixmono/interval.hpp"
#include "mixmono/jacobian.hpp"

namespace mixmono {

// Smallest per-axis count k with k^dim >= total.
std::size_t grid_points_per_axis(std::size_t total, std::size_t dim);

// Min/max of every component of f over the uniform grid with `per_axis`
// nodes along each axis (corners included). OpenMP-parallel over nodes.
std::vector<Interval> grid_range(const VectorField& f, const Box& box, std::size_t per_axis);

// Trajectories of f from each initial point, sampled at sample_times(t_end, step).
// OpenMP-parallel over initial points.
std::vector<std::vector<Point>> sample_flows(const VectorField& f, const std::vector<Point>& initial, double t_end,
                                             double step, const IntegrationOptions& opts = {});

namespace serial {
std::vector<Interval> grid_range(const VectorField& f, const Box& box, std::size_t per_axis);
std::vector<std::vector<Point>> sample_flows(const VectorField& f, const std::vector<Point>& initial, double t_end,
                                             double step, const IntegrationOptions& opts = {});
}  // namespace serial

}  // namespace mixmono
