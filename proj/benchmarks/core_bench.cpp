#include <benchmark/benchmark.h>

#include "coorbital/curve.hpp"
#include "coorbital/kernel.hpp"
#include "coorbital/model.hpp"
#include "coorbital/rootfind.hpp"
#include "coorbital/symmetric.hpp"

namespace {

using namespace coorbital;

void BM_KernelValue(benchmark::State& state) {
    double t = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel::value(t));
        t = t < 6.0 ? t + 1e-3 : 0.1;
    }
}
BENCHMARK(BM_KernelValue);

void BM_KernelDerivatives(benchmark::State& state) {
    double t = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel::derivative(t));
        benchmark::DoNotOptimize(kernel::second_derivative(t));
        t = t < 6.0 ? t + 1e-3 : 0.1;
    }
}
BENCHMARK(BM_KernelDerivatives);

void BM_BracketRootCriticalPoint(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            bracket_root(kernel::derivative, 3.0 * pi / 5.0, 2.0 * pi / 3.0).root);
    }
}
BENCHMARK(BM_BracketRootCriticalPoint);

void BM_PositiveNullMasses(benchmark::State& state) {
    const auto s = solve_T37();
    const auto m = mass_matrix(*s.config);
    for (auto _ : state) {
        benchmark::DoNotOptimize(positive_null_masses(m).rank);
    }
}
BENCHMARK(BM_PositiveNullMasses);

void BM_SolveAllCases(benchmark::State& state) {
    for (auto _ : state) {
        for (auto tag : {TheoremTag::T32, TheoremTag::T33, TheoremTag::T34, TheoremTag::T35,
                         TheoremTag::T36, TheoremTag::T37}) {
            benchmark::DoNotOptimize(solve_case(tag).exists);
        }
    }
}
BENCHMARK(BM_SolveAllCases)->Unit(benchmark::kMillisecond);

void BM_TraceD2(benchmark::State& state) {
    TraceOptions options;
    options.threads = static_cast<unsigned>(state.range(0));
    const auto grid = linear_grid(1.1, 3.1, 201);
    for (auto _ : state) {
        benchmark::DoNotOptimize(trace_curve(Region::D2, grid, options).size());
    }
}
BENCHMARK(BM_TraceD2)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SpecialPoints(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_special_points().points.size());
    }
}
BENCHMARK(BM_SpecialPoints)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
