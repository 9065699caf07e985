#include "algser/decide.hpp"
#include "algser/primes.hpp"

#include <benchmark/benchmark.h>

namespace {

algser::PolySystem catalan() {
    return algser::PolySystem::parse("vars: y\nindets: x\ny = x + 2*x*y + x*y^2\n");
}

void bm_series_mul(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    algser::PolySystem s = catalan();
    std::vector<algser::TruncatedSeries> sol = algser::kleene_solve(s, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            algser::series_trunc_mul(sol[0], sol[0], static_cast<std::uint64_t>(n)));
    }
}
BENCHMARK(bm_series_mul)->Arg(64)->Arg(256)->Arg(1024);

void bm_kleene(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    algser::PolySystem s = catalan();
    algser::Int p(algser::kProbePrime);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            algser::kleene_solve(s, static_cast<std::uint64_t>(n), &p));
    }
}
BENCHMARK(bm_kleene)->Arg(16)->Arg(64)->Arg(256);

void bm_approximant_expand(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    algser::PolySystem s = catalan();
    int stage = n == 0 ? 0 : static_cast<int>(algser::ceil_log2(algser::Int(n + 1)));
    algser::Circuit c = algser::polynomial_approximant(s, stage, 0);
    algser::Int prime(algser::kProbePrime);
    auto assign = algser::identity_series_assignment(c, static_cast<std::uint64_t>(n));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            algser::eval_series(c, assign, static_cast<std::uint64_t>(n), &prime));
    }
}
BENCHMARK(bm_approximant_expand)->Arg(16)->Arg(64)->Arg(256);

void bm_geometric_sum_build(benchmark::State& state) {
    algser::Circuit base;
    base.set_output(base.input("x"));
    algser::Int m = (algser::Int(1) << state.range(0)) - 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(algser::geometric_sum_circuit(base, m));
    }
}
BENCHMARK(bm_geometric_sum_build)->Arg(10)->Arg(20)->Arg(30);

} // namespace

BENCHMARK_MAIN();
