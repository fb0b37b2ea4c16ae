// Serial reference vs OpenMP kernel for each parallel entry point.

#include <benchmark/benchmark.h>

#include <random>

#include "mixmono/decomposition.hpp"
#include "mixmono/jacobian.hpp"
#include "mixmono/sampling.hpp"

namespace {

using namespace mixmono;

const VectorField& field() {
  static const VectorField f = VectorField::parse(
      3, {"x1^2 - x2 + sin(x3)", "sin(x1) + 2*x2 - x3*x1", "exp(-x3^2) + x1*x2 - cos(x2)"});
  return f;
}

const VectorField& wide_field() {
  static const VectorField f = [] {
    std::vector<std::string> comps;
    for (int i = 1; i <= 12; ++i) {
      std::string s;
      for (int j = 1; j <= 12; ++j) {
        if (j > 1) s += " + ";
        s += "sin(x" + std::to_string(j) + " * " + std::to_string(i) + ")*x" + std::to_string((i + j) % 12 + 1);
      }
      comps.push_back(s);
    }
    return VectorField::parse(12, comps);
  }();
  return f;
}

Box unit_box(std::size_t n) { return Box(std::vector<double>(n, -1.0), std::vector<double>(n, 1.0)); }

template <bool Parallel>
void BM_RefineBounds(benchmark::State& state) {
  const Box box = unit_box(3);
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = Parallel ? refine_bounds(field(), box, depth) : serial::refine_bounds(field(), box, depth);
    benchmark::DoNotOptimize(r);
  }
}

template <bool Parallel>
void BM_GridRange(benchmark::State& state) {
  const Box box = unit_box(3);
  const auto per_axis = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto r = Parallel ? grid_range(field(), box, per_axis) : serial::grid_range(field(), box, per_axis);
    benchmark::DoNotOptimize(r);
  }
}

template <bool Parallel>
void BM_SampleFlows(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::vector<Point> starts(static_cast<std::size_t>(state.range(0)), Point(3));
  for (auto& p : starts) {
    for (double& v : p) v = u(rng);
  }
  for (auto _ : state) {
    auto r = Parallel ? sample_flows(field(), starts, 1.0, 1e-2) : serial::sample_flows(field(), starts, 1.0, 1e-2);
    benchmark::DoNotOptimize(r);
  }
}

template <bool Parallel>
void BM_JacobianBounds(benchmark::State& state) {
  const Box box = unit_box(12);
  for (auto _ : state) {
    auto r = Parallel ? jacobian_bounds(wide_field(), box) : serial::jacobian_bounds(wide_field(), box);
    benchmark::DoNotOptimize(r);
  }
}

}  // namespace

BENCHMARK(BM_RefineBounds<false>)->Name("refine_bounds/serial")->Arg(6)->Arg(10);
BENCHMARK(BM_RefineBounds<true>)->Name("refine_bounds/omp")->Arg(6)->Arg(10)->UseRealTime();
BENCHMARK(BM_GridRange<false>)->Name("grid_range/serial")->Arg(22)->Arg(64);
BENCHMARK(BM_GridRange<true>)->Name("grid_range/omp")->Arg(22)->Arg(64)->UseRealTime();
BENCHMARK(BM_SampleFlows<false>)->Name("sample_flows/serial")->Arg(100);
BENCHMARK(BM_SampleFlows<true>)->Name("sample_flows/omp")->Arg(100)->UseRealTime();
BENCHMARK(BM_JacobianBounds<false>)->Name("jacobian_bounds/serial");
BENCHMARK(BM_JacobianBounds<true>)->Name("jacobian_bounds/omp")->UseRealTime();

BENCHMARK_MAIN();
