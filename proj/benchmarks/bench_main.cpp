#include <benchmark/benchmark.h>

#include "specseq/lattice.hpp"
#include "specseq/random.hpp"
#include "specseq/spectral.hpp"
#include "specseq/tot.hpp"
#include "specseq/witness.hpp"

using namespace specseq;

namespace {

FilteredComplex filtered_instance(int size) {
    Rng rng(1234);
    FilteredGenOptions opt;
    opt.max_dim = size;
    return random_filtered(rng, Field::rationals(), opt);
}

Bicomplex bicomplex_instance(int size) {
    Rng rng(5678);
    BicomplexGenOptions opt;
    opt.max_dim = size;
    return random_bicomplex(rng, Field::rationals(), opt);
}

void BM_FilteredPage(benchmark::State& state) {
    const FilteredComplex a = filtered_instance(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(page(a, 3));
}
BENCHMARK(BM_FilteredPage)->Arg(2)->Arg(4)->Arg(6);

void BM_WitnessPage(benchmark::State& state) {
    const Bicomplex a = bicomplex_instance(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(page(a, 3));
}
BENCHMARK(BM_WitnessPage)->Arg(2)->Arg(4);

void BM_TotPi(benchmark::State& state) {
    const Bicomplex a = bicomplex_instance(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(tot_pi(a));
}
BENCHMARK(BM_TotPi)->Arg(2)->Arg(4);

void BM_LatticeCheck(benchmark::State& state) {
    const int r = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(check_distributive(r));
}
BENCHMARK(BM_LatticeCheck)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
