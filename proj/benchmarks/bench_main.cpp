#include "dicke/angular_momentum.hpp"
#include "dicke/evolve.hpp"
#include "dicke/liouville.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace dicke;

void BM_ApplyRhs(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const MasterEquation me(realize({PerturbationKind::Separation, 0.01}, SystemConfig::lattice(n)));
    const DenseOperator rho = ground_state(n);
    DenseOperator out(me.dim(), me.dim());
    for (auto _ : state) {
        me.apply(rho, out);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_ApplyRhs)->DenseRange(4, 8)->Unit(benchmark::kMicrosecond);

void BM_Evolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const MasterEquation me(realize({}, SystemConfig::lattice(n)));
    for (auto _ : state) benchmark::DoNotOptimize(evolve(me, ground_state(n), 10.0, {10.0}).final_rho.data());
}
BENCHMARK(BM_Evolve)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_BuildLiouvillian(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const MasterEquation me(realize({PerturbationKind::Dephasing, 0.01}, SystemConfig::lattice(n)));
    for (auto _ : state) benchmark::DoNotOptimize(build_liouvillian(me).entries.data());
}
BENCHMARK(BM_BuildLiouvillian)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_Spectrum(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const bool vectors = state.range(1) != 0;
    const LiouvillianMatrix L =
        build_liouvillian(MasterEquation(realize({PerturbationKind::Dephasing, 0.01}, SystemConfig::lattice(n))));
    for (auto _ : state) benchmark::DoNotOptimize(spectrum(L, {.vectors = vectors}).null_dim);
}
BENCHMARK(BM_Spectrum)->ArgsProduct({{2, 3, 4}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_BuildBasis(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_basis(n).transform.data());
}
BENCHMARK(BM_BuildBasis)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
