// Serial reference vs OpenMP kernels: assembly and dense application.

#include <benchmark/benchmark.h>

#include <random>

#include "mixlap/operators.hpp"
#include "mixlap/parallel.hpp"
#include "mixlap/reference.hpp"

using namespace mixlap;

namespace {

GridPtr grid_1d(int k) { return make_grid(Domain::interval(0, 1), std::pow(2.0, -k)); }

void BM_assemble_serial_1d(benchmark::State& state) {
    const auto g = grid_1d(static_cast<int>(state.range(0)));
    const FractionalParams p(1, 0.25);
    for (auto _ : state) {
        auto A = assemble_fractional(*g, p, Exec::Serial);
        benchmark::DoNotOptimize(A.data());
    }
}

void BM_assemble_parallel_1d(benchmark::State& state) {
    const auto g = grid_1d(static_cast<int>(state.range(0)));
    const FractionalParams p(1, 0.25);
    for (auto _ : state) {
        auto A = assemble_fractional(*g, p, Exec::Parallel);
        benchmark::DoNotOptimize(A.data());
    }
}

void BM_assemble_serial_2d(benchmark::State& state) {
    const auto g = make_grid(Domain::ball({0, 0}, 1.0), 1.0 / state.range(0));
    const FractionalParams p(2, 0.25);
    for (auto _ : state) {
        auto A = assemble_fractional(*g, p, Exec::Serial);
        benchmark::DoNotOptimize(A.data());
    }
}

void BM_assemble_parallel_2d(benchmark::State& state) {
    const auto g = make_grid(Domain::ball({0, 0}, 1.0), 1.0 / state.range(0));
    const FractionalParams p(2, 0.25);
    for (auto _ : state) {
        auto A = assemble_fractional(*g, p, Exec::Parallel);
        benchmark::DoNotOptimize(A.data());
    }
}

Eigen::MatrixXd dense_op(int k) {
    const auto g = grid_1d(k);
    return assemble_fractional(*g, FractionalParams(1, 0.25));
}

void BM_matvec_serial(benchmark::State& state) {
    const auto A = dense_op(static_cast<int>(state.range(0)));
    Eigen::VectorXd x = Eigen::VectorXd::Random(A.rows());
    for (auto _ : state) {
        auto y = reference::matvec(A, x);
        benchmark::DoNotOptimize(y.data());
    }
}

void BM_matvec_parallel(benchmark::State& state) {
    const auto A = dense_op(static_cast<int>(state.range(0)));
    Eigen::VectorXd x = Eigen::VectorXd::Random(A.rows());
    Eigen::VectorXd y(A.rows());
    for (auto _ : state) {
        par::for_range(A.rows(),
                       [&](std::int64_t i) { y[i] = detail::row_dot(A, i, x); });
        benchmark::DoNotOptimize(y.data());
    }
}

}  // namespace

BENCHMARK(BM_assemble_serial_1d)->Arg(9)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_assemble_parallel_1d)->Arg(9)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_assemble_serial_2d)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_assemble_parallel_2d)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_matvec_serial)->Arg(10)->Arg(11)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_matvec_parallel)->Arg(10)->Arg(11)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
