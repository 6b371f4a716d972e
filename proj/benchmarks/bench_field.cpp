#include <cstdint>

#include "benchmark/benchmark.h"

#include "strengthlab/field.hpp"

using namespace strengthlab;

namespace {

void BM_prime_mul(benchmark::State& state) {
    const FieldPtr K = Field::prime(static_cast<std::uint32_t>(state.range(0)));
    std::uint32_t a = 2;
    for (auto _ : state) {
        a = K->mul(a, 3);
        benchmark::DoNotOptimize(a);
    }
}
BENCHMARK(BM_prime_mul)->Arg(5)->Arg(997);

void BM_prime_inv(benchmark::State& state) {
    const FieldPtr K = Field::prime(static_cast<std::uint32_t>(state.range(0)));
    std::uint32_t a = 2;
    for (auto _ : state) {
        a = K->inv(a);  // stays nonzero, so the next round is valid
        benchmark::DoNotOptimize(a);
    }
}
BENCHMARK(BM_prime_inv)->Arg(5)->Arg(997);

void BM_extension_mul(benchmark::State& state) {
    const FieldPtr K = Field::extension(5, static_cast<std::uint32_t>(state.range(0)));
    const std::uint32_t b = K->q() - 2;
    std::uint32_t a = 1;
    for (auto _ : state) {
        a = K->mul(a, b);
        benchmark::DoNotOptimize(a);
    }
}
BENCHMARK(BM_extension_mul)->Arg(2)->Arg(3)->Arg(6);

void BM_extension_inv(benchmark::State& state) {
    const FieldPtr K = Field::extension(5, static_cast<std::uint32_t>(state.range(0)));
    std::uint32_t a = K->q() - 2;
    for (auto _ : state) {
        a = K->inv(a);
        benchmark::DoNotOptimize(a);
    }
}
BENCHMARK(BM_extension_inv)->Arg(2)->Arg(6);

void BM_pow(benchmark::State& state) {
    const FieldPtr K = Field::prime(997);
    for (auto _ : state) benchmark::DoNotOptimize(K->pow(5, 995));
}
BENCHMARK(BM_pow);

}  // namespace

BENCHMARK_MAIN();
