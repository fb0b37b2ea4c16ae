// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "mixmono/decomposition.hpp"
#include "mixmono/embedding.hpp"
#include "mixmono/jacobian.hpp"
#include "mixmono/jordan.hpp"
#include "mixmono/sampling.hpp"
#include "support.hpp"

using namespace mixmono;
using testing_support::Rng;

namespace {

// Collects failed checks for one criterion.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  void near(double got, double want, double tol, const std::string& what) {
    expect(std::fabs(got - want) <= tol,
           what + ": got " + std::to_string(got) + ", want " + std::to_string(want) + " (tol " + std::to_string(tol) + ")");
  }
  bool ok() const { return failed_ == 0; }
  const std::vector<std::string>& failures() const { return failures_; }
  int failed() const { return failed_; }

 private:
  std::vector<std::string> failures_;
  int failed_ = 0;
};

std::vector<Interval> decomposition_bounds(const VectorField& f, const Box& box) {
  return bound_box(build_decomposition(jacobian_bounds(f, box)), f, box);
}

void criterion1(Checks& c) {
  const VectorField f = VectorField::parse(1, {"-x1"});
  const Box box = testing_support::make_box({0.0}, {1.0});
  const auto b = decomposition_bounds(f, box);
  c.near(b[0].lo(), -1.0, 1e-9, "case-table lower");
  c.near(b[0].hi(), 0.0, 1e-9, "case-table upper");

  const BvDecomposition bv(ScalarFunction::parse("-x1", Interval(0.0, 1.0)));
  const Interval vb = bv.bounds();
  c.near(vb.lo(), 0.0 - 2.0 * 1.0, 1e-6, "variation lower");
  c.near(vb.hi(), 1.0 - 2.0 * 0.0, 1e-6, "variation upper");
}

void criterion2(Checks& c) {
  const VectorField f = VectorField::parse(1, {"x1^2"});
  const Box box = testing_support::make_box({-1.0}, {1.0});
  const auto b = decomposition_bounds(f, box);
  c.near(b[0].lo(), -3.0, 1e-9, "case-table lower");
  c.near(b[0].hi(), 5.0, 1e-9, "case-table upper");

  const BvDecomposition bv(ScalarFunction::parse("x1^2", Interval(-1.0, 1.0)));
  const Interval vb = bv.bounds();
  c.near(vb.lo(), -1.0, 1e-6, "variation lower");
  c.near(vb.hi(), 3.0, 1e-6, "variation upper");

  const auto r = refine_bounds(f, box, 1);
  c.near(r[0].lo(), 0.0, 1e-9, "depth-1 lower");
  c.near(r[0].hi(), 1.0, 1e-9, "depth-1 upper");
}

void criterion3(Checks& c) {
  const auto members = testing_support::corpus();
  c.expect(members.size() >= 5, "corpus has at least five fields");
  Rng rng(101);
  for (const auto& m : members) {
    const auto spec = build_decomposition(jacobian_bounds(m.field, m.box));
    const std::size_t n = m.box.dim();
    for (int k = 0; k < 1000; ++k) {
      const Point x = rng.point_in(m.box);
      const Point fx = m.field(x);
      const Point gxx = eval_decomposition(spec, m.field, x, x);
      for (std::size_t i = 0; i < fx.size(); ++i) c.near(gxx[i], fx[i], 1e-9, m.name + " diagonal");

      // ordered pairs hi >= lo componentwise
      Point lo = rng.point_in(m.box), hi = rng.point_in(m.box);
      for (std::size_t j = 0; j < n; ++j)
        if (lo[j] > hi[j]) std::swap(lo[j], hi[j]);
      const Point y = rng.point_in(m.box);
      const Point g_hi_y = eval_decomposition(spec, m.field, hi, y);
      const Point g_lo_y = eval_decomposition(spec, m.field, lo, y);
      const Point g_x_hi = eval_decomposition(spec, m.field, y, hi);
      const Point g_x_lo = eval_decomposition(spec, m.field, y, lo);
      for (std::size_t i = 0; i < fx.size(); ++i) {
        c.expect(g_hi_y[i] >= g_lo_y[i] - 1e-9, m.name + " increasing in x");
        c.expect(g_x_hi[i] <= g_x_lo[i] + 1e-9, m.name + " decreasing in y");
      }
    }
  }
}

std::vector<Point> corners(const Box& box) {
  const std::size_t n = box.dim();
  std::vector<Point> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Point p(n);
    for (std::size_t j = 0; j < n; ++j) p[j] = (mask >> j) & 1 ? box[j].hi() : box[j].lo();
    out.push_back(p);
  }
  return out;
}

void criterion4(Checks& c) {
  for (const auto& m : testing_support::corpus()) {
    const auto grid = grid_range(m.field, m.box, grid_points_per_axis(10000, m.box.dim()));
    const auto check = [&](const std::vector<Interval>& b, const std::string& label) {
      for (std::size_t i = 0; i < b.size(); ++i) {
        c.expect(grid[i].lo() - b[i].lo() >= -1e-9, m.name + " " + label + " lower contains grid");
        c.expect(b[i].hi() - grid[i].hi() >= -1e-9, m.name + " " + label + " upper contains grid");
      }
    };
    const auto b0 = decomposition_bounds(m.field, m.box);
    check(b0, "bound_box");
    for (int depth : {1, 3, 6}) check(refine_bounds(m.field, m.box, depth), "depth " + std::to_string(depth));

    if (m.sign_stable) {
      for (std::size_t i = 0; i < b0.size(); ++i) {
        double lo = INFINITY, hi = -INFINITY;
        for (const auto& p : corners(m.box)) {
          lo = std::min(lo, m.field.eval_component(i, p));
          hi = std::max(hi, m.field.eval_component(i, p));
        }
        c.near(b0[i].lo(), lo, 1e-9, m.name + " tight lower");
        c.near(b0[i].hi(), hi, 1e-9, m.name + " tight upper");
      }
    }
  }
}

void criterion5(Checks& c) {
  const double two_pi = 2.0 * std::numbers::pi;
  const ScalarFunction s = ScalarFunction::parse("sin(x1)", Interval(0.0, two_pi));
  const double oracle = testing_support::composite_gauss([](double t) { return std::fabs(std::cos(t)); }, 0.0, two_pi, 64);
  c.near(oracle, 4.0, 1e-12, "oracle");
  c.near(total_variation(s, Interval(0.0, two_pi)), oracle, 1e-6, "TV(sin)");

  VariationOptions opts;
  const std::vector<ScalarFunction> fns = {
      s,
      ScalarFunction::parse("x1^2", Interval(-1.0, 1.0)),
      ScalarFunction::parse("x1*sin(x1)", Interval(-3.0, 3.0)),
      ScalarFunction::parse("abs(x1 - 0.3)", Interval(-1.0, 1.0)),
  };
  Rng rng(55);
  for (const auto& f : fns) {
    const Interval d = f.domain();
    const double whole = total_variation(f, d, opts);
    for (int k = 0; k < 20; ++k) {
      const double b = rng.uniform(d.lo(), d.hi());
      const double parts = total_variation(f, Interval(d.lo(), b), opts) + total_variation(f, Interval(b, d.hi()), opts);
      c.near(parts, whole, 3.0 * opts.tol, to_string(f.expr()) + " additivity");
    }
    const JordanSplit js(f, opts);
    double prev_p = js.positive(d.lo()), prev_n = js.negative(d.lo());
    for (int k = 1; k < 1000; ++k) {
      const double x = d.lo() + d.width() * k / 999.0;
      const double p = js.positive(x), n = js.negative(x);
      c.expect(p >= prev_p - opts.tol, to_string(f.expr()) + " f+ nondecreasing");
      c.expect(n <= prev_n + opts.tol, to_string(f.expr()) + " f- nonincreasing");
      prev_p = p;
      prev_n = n;
    }
  }
}

void criterion6(Checks& c) {
  const VectorField f = VectorField::parse(1, {"-x1"});
  const Box box = testing_support::make_box({0.0}, {1.0});
  const auto sys = build_embedding(f, build_decomposition(jacobian_bounds(f, box)));
  const Point lo = {0.0}, hi = {1.0};
  const ReachTube tube = integrate_embedding(sys, lo, hi, 1.0, 1e-3);
  // x' = -y, y' = -x from (0, 1): x = -sinh t, y = cosh t
  const TubeSample& end = tube.samples.back();
  c.near(end.t, 1.0, 0.0, "final time");
  c.near(end.lower[0], -std::sinh(1.0), 1e-6, "tube lower");
  c.near(end.upper[0], std::cosh(1.0), 1e-6, "tube upper");

  const Point one = {1.0};
  const ReachTube point = integrate_embedding(sys, one, one, 1.0, 1e-3);
  c.near(point.samples.back().lower[0], std::exp(-1.0), 1e-6, "degenerate lower");
  c.near(point.samples.back().upper[0], std::exp(-1.0), 1e-6, "degenerate upper");

  Rng rng(7);
  std::vector<Point> starts;
  for (int k = 0; k < 100; ++k) starts.push_back(rng.point_in(box));
  const auto flows = sample_flows(f, starts, 1.0, 1e-3);
  for (const auto& traj : flows) {
    c.expect(traj.size() == tube.samples.size(), "trajectory sample count");
    for (std::size_t k = 0; k < std::min(traj.size(), tube.samples.size()); ++k) {
      c.expect(traj[k][0] >= tube.samples[k].lower[0] - 1e-6, "trajectory above tube");
      c.expect(traj[k][0] <= tube.samples[k].upper[0] + 1e-6, "trajectory below tube");
    }
  }
}

void criterion7(Checks& c) {
  VariationOptions opts;
  const double tol = 10.0 * opts.tol;
  const Expr f = parse("x1*sin(x1)", 1);
  const UnboundedDecomposition g(f, opts);
  Rng rng(2024);
  for (int k = 0; k < 1000; ++k) {
    const double x = rng.uniform(-10.0, 10.0);
    c.near(g(x, x), eval(f, std::vector<double>{x}), tol, "diagonal");

    double a = rng.uniform(-10.0, 10.0), b = rng.uniform(-10.0, 10.0);
    if (a > b) std::swap(a, b);
    const double y = rng.uniform(-10.0, 10.0);
    c.expect(g(b, y) >= g(a, y) - tol, "increasing in x");
    c.expect(g(y, b) <= g(y, a) + tol, "decreasing in y");

    const double neg = rng.uniform(-10.0, 0.0), pos = rng.uniform(0.0, 10.0);
    c.expect(g.g1(neg) <= 0.0 && 0.0 <= g.g1(pos), "g1(x-) <= 0 <= g1(x+)");
    c.expect(g.g2(neg) >= 0.0 && 0.0 >= g.g2(pos), "g2(x-) >= 0 >= g2(x+)");
    c.expect(g.g1(pos) >= g.g1(neg), "g1 nondecreasing across 0");
    c.expect(g.g2(pos) <= g.g2(neg), "g2 nonincreasing across 0");
  }
  c.expect(g.g1(0.0) == 0.0 && g.g2(0.0) == 0.0, "g1(0) = g2(0) = 0");
}

}  // namespace

int main() {
  struct Criterion {
    const char* label;
    std::function<void(Checks&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"1 -x on [0,1]: case-table and variation bounds", criterion1},
      {"2 x^2 on [-1,1]: case-table, variation and depth-1 bounds", criterion2},
      {"3 decomposition axioms on the field corpus", criterion3},
      {"4 bounds enclose the grid range, tight when sign-stable", criterion4},
      {"5 total variation, additivity and Jordan monotonicity", criterion5},
      {"6 reach tube of x' = -x", criterion6},
      {"7 whole-line decomposition of x sin x", criterion7},
  };
  std::printf("threads: %d\n", omp_get_max_threads());
  int failed = 0;
  for (const auto& cr : criteria) {
    Checks c;
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    std::printf("%s criterion %s\n", c.ok() ? "PASS" : "FAIL", cr.label);
    for (const auto& msg : c.failures()) std::printf("    %s\n", msg.c_str());
    if (c.failed() > static_cast<int>(c.failures().size()))
      std::printf("    ... %d failed checks in total\n", c.failed());
    if (!c.ok()) ++failed;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
