#include <cstdint>
#include <vector>

#include "benchmark/benchmark.h"

#include "strengthlab/field.hpp"
#include "strengthlab/matrix.hpp"
#include "strengthlab/rng.hpp"
#include "strengthlab/subspace.hpp"

using namespace strengthlab;

namespace {

Matrix random_matrix(const FieldPtr& K, std::size_t rows, std::size_t cols, SplitMix64& rng) {
    Matrix m(K, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.at(i, j) = static_cast<std::uint32_t>(rng.below(K->q()));
    return m;
}

void BM_rank(benchmark::State& state) {
    const FieldPtr K = Field::prime(5);
    SplitMix64 rng(1);
    const auto n = static_cast<std::size_t>(state.range(0));
    const Matrix m = random_matrix(K, n, n, rng);
    for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_rank)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_inverse(benchmark::State& state) {
    const FieldPtr K = Field::prime(5);
    SplitMix64 rng(2);
    const auto n = static_cast<std::size_t>(state.range(0));
    Matrix m(K, n, n);
    do {
        m = random_matrix(K, n, n, rng);
    } while (rank(m) != n);
    for (auto _ : state) benchmark::DoNotOptimize(inverse(m));
}
BENCHMARK(BM_inverse)->Arg(4)->Arg(8)->Arg(16);

void BM_kernel(benchmark::State& state) {
    const FieldPtr K = Field::prime(5);
    SplitMix64 rng(3);
    const auto n = static_cast<std::size_t>(state.range(0));
    const Matrix m = random_matrix(K, n / 2, n, rng);
    for (auto _ : state) benchmark::DoNotOptimize(kernel(m));
}
BENCHMARK(BM_kernel)->Arg(8)->Arg(16);

void BM_subspace_contains(benchmark::State& state) {
    const FieldPtr K = Field::prime(5);
    SplitMix64 rng(4);
    const Matrix m = random_matrix(K, 3, 9, rng);
    const Subspace w = kernel(m);
    std::vector<std::uint32_t> v(9);
    for (auto& x : v) x = static_cast<std::uint32_t>(rng.below(5));
    for (auto _ : state) benchmark::DoNotOptimize(w.contains(v));
}
BENCHMARK(BM_subspace_contains);

}  // namespace

BENCHMARK_MAIN();
