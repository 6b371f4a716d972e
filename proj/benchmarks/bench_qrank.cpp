#include <array>
#include <cstdint>
#include <vector>

#include "benchmark/benchmark.h"

#include "strengthlab/field.hpp"
#include "strengthlab/forms.hpp"
#include "strengthlab/qrank.hpp"
#include "strengthlab/rng.hpp"
#include "strengthlab/subspace.hpp"
#include "strengthlab/witness.hpp"

using namespace strengthlab;

namespace {

CubicForm random_cubic(const FieldPtr& K, std::uint32_t n, SplitMix64& rng) {
    std::vector<std::pair<std::array<std::uint32_t, 3>, std::uint32_t>> raw;
    for (std::uint64_t i = 0; i < 2 * n; ++i) {
        std::array<std::uint32_t, 3> v;
        for (auto& x : v) x = static_cast<std::uint32_t>(rng.below(n));
        raw.emplace_back(v, static_cast<std::uint32_t>(rng.below(K->q())));
    }
    return CubicForm::from_terms(K, n, raw);
}

void BM_evaluate(benchmark::State& state) {
    const FieldPtr K = Field::prime(5);
    SplitMix64 rng(1);
    const auto n = static_cast<std::uint32_t>(state.range(0));
    const CubicForm f = random_cubic(K, n, rng);
    std::vector<std::uint32_t> pt(n);
    for (auto& x : pt) x = static_cast<std::uint32_t>(rng.below(5));
    for (auto _ : state) benchmark::DoNotOptimize(evaluate(f, pt));
}
BENCHMARK(BM_evaluate)->Arg(4)->Arg(8);

void BM_restrict(benchmark::State& state) {
    const FieldPtr K = Field::prime(5);
    SplitMix64 rng(2);
    const auto n = static_cast<std::uint32_t>(state.range(0));
    const CubicForm f = random_cubic(K, n, rng);
    Matrix m(K, 2, n);
    for (std::size_t j = 0; j < n; ++j) {
        m.at(0, j) = static_cast<std::uint32_t>(rng.below(5));
        m.at(1, j) = static_cast<std::uint32_t>(rng.below(5));
    }
    const Subspace w = kernel(m);
    for (auto _ : state) benchmark::DoNotOptimize(restrict_form(f, w));
}
BENCHMARK(BM_restrict)->Arg(6)->Arg(9);

void BM_qrank_oracle_diag(benchmark::State& state) {
    const FieldPtr K = Field::prime(5);
    const CubicForm f = diagonal_cubic(K, static_cast<std::uint32_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(qrank_oracle(f));
}
BENCHMARK(BM_qrank_oracle_diag)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_qrank_linear_solve(benchmark::State& state) {
    const FieldPtr K = Field::prime(5);
    const CubicForm f = CubicForm::from_terms(K, 2, {{{0, 0, 0}, 1}, {{1, 1, 1}, 1}});
    for (auto _ : state) benchmark::DoNotOptimize(qrank_linear_solve_oracle(f));
}
BENCHMARK(BM_qrank_linear_solve);

void BM_three_phase(benchmark::State& state) {
    const FieldPtr K = Field::prime(5);
    SplitMix64 rng(3);
    const auto n = static_cast<std::uint32_t>(state.range(0));
    const std::uint32_t m = 3 * n;
    std::vector<std::array<LinearForm, 3>> rows;
    for (std::uint32_t i = 0; i < n; ++i)
        rows.push_back({LinearForm::coordinate(K, m, 3 * i), LinearForm::coordinate(K, m, 3 * i + 1),
                        LinearForm::coordinate(K, m, 3 * i + 2)});
    const TripleMatrix tm = TripleMatrix::from_rows(K, m, rows);
    for (auto _ : state) benchmark::DoNotOptimize(three_phase_basis(tm));
}
BENCHMARK(BM_three_phase)->Arg(2)->Arg(4);

void BM_xi(benchmark::State& state) {
    std::uint64_t d = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(xi(d));
        d = (d + 1) & 0xfffff;
    }
}
BENCHMARK(BM_xi);

}  // namespace

BENCHMARK_MAIN();
