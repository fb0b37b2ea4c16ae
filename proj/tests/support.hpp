#pragma once

// Independent oracles and fixtures shared by the test binaries. Nothing here
// calls into the quadrature or integration code under test.

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "mixmono/interval.hpp"
#include "mixmono/jacobian.hpp"

namespace testing_support {

using mixmono::Box;
using mixmono::Point;
using Matrix = std::vector<std::vector<double>>;

class Rng {
 public:
  explicit Rng(unsigned long long seed) : engine_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  Point point_in(const Box& box) {
    Point p(box.dim());
    for (std::size_t i = 0; i < box.dim(); ++i) p[i] = box[i].width() > 0 ? uniform(box[i].lo(), box[i].hi()) : box[i].lo();
    return p;
  }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
inline void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    nodes[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

// Composite 20-point Gauss-Legendre rule with `panels` equal panels.
inline double composite_gauss(const std::function<double(double)>& f, double a, double b, int panels) {
  std::vector<double> x;
  std::vector<double> w;
  gauss_legendre(20, x, w);
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t k = 0; k < x.size(); ++k) sum += 0.5 * h * w[k] * f(mid + 0.5 * h * x[k]);
  }
  return sum;
}

inline Matrix mat_mul(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  Matrix c(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

// exp(A t) by scaling and squaring of a 30-term Taylor series.
inline Matrix expm(const Matrix& a, double t) {
  const std::size_t n = a.size();
  double norm = 0.0;
  for (const auto& row : a) {
    for (double v : row) norm = std::max(norm, std::fabs(v * t));
  }
  int squarings = 0;
  while (norm * n > 0.5) {
    norm /= 2.0;
    ++squarings;
  }
  const double scale = t / std::ldexp(1.0, squarings);
  Matrix result(n, std::vector<double>(n, 0.0));
  Matrix term(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) result[i][i] = term[i][i] = 1.0;
  Matrix scaled = a;
  for (auto& row : scaled) {
    for (double& v : row) v *= scale;
  }
  for (int k = 1; k <= 30; ++k) {
    term = mat_mul(term, scaled);
    for (auto& row : term) {
      for (double& v : row) v /= k;
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) result[i][j] += term[i][j];
    }
  }
  for (int s = 0; s < squarings; ++s) result = mat_mul(result, result);
  return result;
}

inline Point mat_vec(const Matrix& a, const Point& v) {
  Point out(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
  }
  return out;
}

inline Box make_box(const std::vector<double>& lo, const std::vector<double>& hi) { return Box(lo, hi); }

struct CorpusMember {
  std::string name;
  mixmono::VectorField field;
  Box box;
  bool sign_stable;
};

// The shared field corpus: scalar examples, the Metzler linear field, a
// field mixing sign-stable and sign-unstable entries, and one with a
// Case3 entry.
inline std::vector<CorpusMember> corpus() {
  using mixmono::VectorField;
  std::vector<CorpusMember> out;
  out.push_back({"-x", VectorField::parse(1, {"-x1"}), make_box({0.0}, {1.0}), true});
  out.push_back({"x^2", VectorField::parse(1, {"x1^2"}), make_box({-1.0}, {1.0}), false});
  out.push_back({"x sin x", VectorField::parse(1, {"x1*sin(x1)"}), make_box({-3.0}, {3.0}), false});
  out.push_back({"metzler", VectorField::parse(2, {"-x1 + x2", "x1 - x2"}), make_box({0.0, 0.0}, {1.0, 1.0}), true});
  out.push_back(
      {"mixed", VectorField::parse(2, {"x1^2 - x2", "sin(x1) + 2*x2"}), make_box({-1.0, 0.0}, {1.0, 1.0}), false});
  out.push_back({"case3", VectorField::parse(2, {"-x1^3 + x1 + x2*x1", "exp(x1) - x2^2"}),
                 make_box({-1.5, -1.0}, {1.0, 2.0}), false});
  return out;
}

}  // namespace testing_support
