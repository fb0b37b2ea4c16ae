#pragma once

#include <span>
#include <string>
#include <vector>

#include "mixmono/decomposition.hpp"
#include "mixmono/interval.hpp"
#include "mixmono/jacobian.hpp"

namespace mixmono {

// The 2n-dimensional system  x' = g(x, y),  y' = g(y, x)  built from a
// decomposition g of a square vector field f. The diagonal x = y is
// invariant and carries the original dynamics.
class EmbeddingSystem {
 public:
  EmbeddingSystem(VectorField f, DecompositionSpec spec);

  std::size_t dim() const noexcept { return f_.input_dim(); }
  const VectorField& field() const noexcept { return f_; }
  const DecompositionSpec& spec() const noexcept { return spec_; }

  // State layout: [x_1..x_n, y_1..y_n].
  Point operator()(std::span<const double> state) const;

 private:
  VectorField f_;
  DecompositionSpec spec_;
};

EmbeddingSystem build_embedding(const VectorField& f, const DecompositionSpec& spec);

struct TubeSample {
  double t;
  Point lower;
  Point upper;
};

struct ReachTube {
  std::vector<TubeSample> samples;
  double step = 0.0;
  std::string integrator;
};

struct IntegrationOptions {
  double magnitude_cap = 1e12;
};

// Classical fixed-step RK4 on the embedding system from (x_lo, x_hi).
// Samples at t = k * step for k < floor(t_end / step) and at t_end, so the
// last step absorbs any remainder (it is shorter than 2 * step). Throws
// BlowupError when a state component leaves [-cap, cap] or turns non-finite.
ReachTube integrate_embedding(const EmbeddingSystem& sys, std::span<const double> x_lo, std::span<const double> x_hi,
                              double t_end, double step, const IntegrationOptions& opts = {});

// Same integrator on f itself; returns the state at t_end.
Point sample_flow(const VectorField& f, std::span<const double> x0, double t_end, double step,
                  const IntegrationOptions& opts = {});

// Trajectory of f sampled at the same times as integrate_embedding.
std::vector<Point> sample_trajectory(const VectorField& f, std::span<const double> x0, double t_end, double step,
                                     const IntegrationOptions& opts = {});

// Sample times produced for (t_end, step).
std::vector<double> sample_times(double t_end, double step);

}  // namespace mixmono
