#include "mixmono/embedding.hpp"

#include <cmath>
#include <functional>

#include "mixmono/errors.hpp"

namespace mixmono {

EmbeddingSystem::EmbeddingSystem(VectorField f, DecompositionSpec spec) : f_(std::move(f)), spec_(std::move(spec)) {
  if (!f_.is_square()) throw DimensionError("embedding needs a square vector field");
  if (spec_.rows() != f_.output_dim() || spec_.cols() != f_.input_dim()) {
    throw DimensionError("decomposition does not match the vector field");
  }
}

Point EmbeddingSystem::operator()(std::span<const double> state) const {
  const std::size_t n = dim();
  if (state.size() != 2 * n) throw DimensionError("embedding state must have 2n entries");
  const auto x = state.first(n);
  const auto y = state.subspan(n, n);
  Point out(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = eval_decomposition_component(spec_, f_, i, x, y);
    out[n + i] = eval_decomposition_component(spec_, f_, i, y, x);
  }
  return out;
}

EmbeddingSystem build_embedding(const VectorField& f, const DecompositionSpec& spec) { return EmbeddingSystem(f, spec); }

namespace {

using Rhs = std::function<Point(std::span<const double>)>;

void check_magnitude(const Point& s, double t, double cap) {
  for (double v : s) {
    if (!std::isfinite(v) || std::fabs(v) > cap) throw BlowupError(t);
  }
}

Point rk4_step(const Rhs& rhs, const Point& s, double h) {
  const std::size_t d = s.size();
  auto axpy = [d](const Point& base, double a, const Point& k) {
    Point out(d);
    for (std::size_t i = 0; i < d; ++i) out[i] = base[i] + a * k[i];
    return out;
  };
  const Point k1 = rhs(s);
  const Point k2 = rhs(axpy(s, 0.5 * h, k1));
  const Point k3 = rhs(axpy(s, 0.5 * h, k2));
  const Point k4 = rhs(axpy(s, h, k3));
  Point out(d);
  for (std::size_t i = 0; i < d; ++i) out[i] = s[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

void check_times(double t_end, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidBoundsError("step must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw InvalidBoundsError("t_end must be >= 0");
}

// Calls visit(t, state) at every sample time.
template <typename Visit>
void integrate(const Rhs& rhs, Point state, double t_end, double step, double cap, Visit visit) {
  check_magnitude(state, 0.0, cap);
  const auto times = sample_times(t_end, step);
  visit(times[0], state);
  for (std::size_t k = 1; k < times.size(); ++k) {
    state = rk4_step(rhs, state, times[k] - times[k - 1]);
    check_magnitude(state, times[k], cap);
    visit(times[k], state);
  }
}

}  // namespace

std::vector<double> sample_times(double t_end, double step) {
  check_times(t_end, step);
  // Relative guard so that e.g. 1.0 / 1e-3 counts 1000 full steps.
  const auto full = static_cast<std::size_t>(std::floor(t_end / step + 1e-9));
  std::vector<double> times;
  if (full == 0) {
    times.push_back(0.0);
    if (t_end > 0.0) times.push_back(t_end);
    return times;
  }
  times.reserve(full + 1);
  for (std::size_t k = 0; k < full; ++k) times.push_back(static_cast<double>(k) * step);
  // The remainder, if any, is absorbed into the last step.
  times.push_back(t_end);
  return times;
}

ReachTube integrate_embedding(const EmbeddingSystem& sys, std::span<const double> x_lo, std::span<const double> x_hi,
                              double t_end, double step, const IntegrationOptions& opts) {
  const std::size_t n = sys.dim();
  if (x_lo.size() != n || x_hi.size() != n) throw DimensionError("initial box dimension != n");
  if (!leq_orthant(x_lo, x_hi)) throw InvalidBoundsError("initial box needs x_lo <= x_hi");

  Point state(x_lo.begin(), x_lo.end());
  state.insert(state.end(), x_hi.begin(), x_hi.end());

  ReachTube tube;
  tube.step = step;
  tube.integrator = "rk4";
  const Rhs rhs = [&sys](std::span<const double> s) { return sys(s); };
  integrate(rhs, std::move(state), t_end, step, opts.magnitude_cap, [&](double t, const Point& s) {
    tube.samples.push_back({t, Point(s.begin(), s.begin() + n), Point(s.begin() + n, s.end())});
  });
  return tube;
}

std::vector<Point> sample_trajectory(const VectorField& f, std::span<const double> x0, double t_end, double step,
                                     const IntegrationOptions& opts) {
  if (!f.is_square()) throw DimensionError("flow needs a square vector field");
  if (x0.size() != f.input_dim()) throw DimensionError("initial point dimension != n");
  std::vector<Point> out;
  const Rhs rhs = [&f](std::span<const double> s) { return f(s); };
  integrate(rhs, Point(x0.begin(), x0.end()), t_end, step, opts.magnitude_cap,
            [&](double, const Point& s) { out.push_back(s); });
  return out;
}

Point sample_flow(const VectorField& f, std::span<const double> x0, double t_end, double step,
                  const IntegrationOptions& opts) {
  return sample_trajectory(f, x0, t_end, step, opts).back();
}

}  // namespace mixmono
