// Serial scatter vs OpenMP gather for the truncated pair convolution.
#include "sparsens/evolution.hpp"
#include "sparsens/generators.hpp"

#include <benchmark/benchmark.h>

using namespace sparsens;

namespace {

// (3,0), (0,6) after a few steps: the whole (3Z x 6Z) sublattice is active
SpectralState lattice_state(int M)
{
    SolenoidalField f;
    f.add(Frequency(3, 0), Phasor{WideReal(1), WideReal(0)});
    f.add(Frequency(0, 6), Phasor{WideReal(0), WideReal(1)});
    SpectralState s = galerkin_truncate(f, M, 1e-3);
    s.kernel = KernelKind::serial;
    for (int i = 0; i < 4; ++i)
        s = step(s);
    return s;
}

SpectralState dense_state(int M)
{
    SpectralState s = galerkin_truncate(random_solenoidal({.seed = 11, .count = 40, .radius = M / 2, .decay = 0.9}),
                                        M, 1e-3);
    s.kernel = KernelKind::serial;
    for (int i = 0; i < 2; ++i)
        s = step(s);
    return s;
}

template <bool Parallel>
void run(benchmark::State& bs, const SpectralState& s)
{
    set_kernel_threads(static_cast<int>(bs.range(0)));
    auto active = active_slots(s.a, s.b);
    std::vector<double> oa, ob;
    for (auto _ : bs) {
        if (Parallel)
            pair_convolution_parallel(*s.table, s.a, s.b, active, oa, ob);
        else
            pair_convolution_serial(*s.table, s.a, s.b, active, oa, ob);
        benchmark::DoNotOptimize(oa.data());
    }
    bs.counters["active"] = static_cast<double>(active.size());
    bs.counters["pairs/s"] = benchmark::Counter(static_cast<double>(active.size() * active.size()),
                                                benchmark::Counter::kIsIterationInvariantRate);
    set_kernel_threads(0);
}

void BM_lattice_serial(benchmark::State& bs)
{
    static const SpectralState s = lattice_state(64);
    run<false>(bs, s);
}
void BM_lattice_parallel(benchmark::State& bs)
{
    static const SpectralState s = lattice_state(64);
    run<true>(bs, s);
}
void BM_dense_serial(benchmark::State& bs)
{
    static const SpectralState s = dense_state(24);
    run<false>(bs, s);
}
void BM_dense_parallel(benchmark::State& bs)
{
    static const SpectralState s = dense_state(24);
    run<true>(bs, s);
}

void BM_step(benchmark::State& bs)
{
    SpectralState s = lattice_state(64);
    s.kernel = bs.range(0) ? KernelKind::parallel : KernelKind::serial;
    for (auto _ : bs)
        benchmark::DoNotOptimize(step(s).a.data());
}

}  // namespace

BENCHMARK(BM_lattice_serial)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_lattice_parallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_dense_serial)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_dense_parallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_step)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
