#include <benchmark/benchmark.h>

#include "majorana/adiabatic_frame.hpp"
#include "majorana/oracles.hpp"
#include "majorana/perturbation.hpp"
#include "majorana/rates.hpp"

using namespace majorana;

namespace {

TrapConfig rubidium(int two_f, int two_fz, double chi0 = 0.0) {
    TrapConfig cfg;
    cfg.bias_field_gauss = 1.0;
    cfg.radial_gradient_gauss_per_cm = 100.0;
    cfg.g_factor = 0.5;
    cfg.mass_amu = 87.0;
    cfg.spin = SpinQuantum::make(two_f, two_fz);
    if (chi0 > 0.0) {
        cfg.bias_field_gauss = bias_field_for_chi0(cfg, chi0);
    }
    return cfg;
}

} // namespace

static void BM_NCoefficients(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(n_coefficients(p));
    }
}
BENCHMARK(BM_NCoefficients)->Arg(5)->Arg(12)->Arg(24);

static void BM_EnumerateSequences(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_step_sequences(p));
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(enumerate_step_sequences(p).size()));
}
BENCHMARK(BM_EnumerateSequences)->Arg(10)->Arg(16)->Arg(20);

static void BM_RotationMatrix(benchmark::State& state) {
    const TrapConfig cfg = rubidium(4, 4);
    const HalfInt f = HalfInt::from_twice(static_cast<int>(state.range(0)));
    const Position r{3e-3, -2e-3, 0.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(rotation_matrix(cfg, f, r));
    }
}
BENCHMARK(BM_RotationMatrix)->Arg(1)->Arg(4)->Arg(12)->Arg(24);

static void BM_GaugePotential(benchmark::State& state) {
    const TrapConfig cfg = rubidium(4, 4);
    const Position r{3e-3, -2e-3, 0.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(gauge_potential(cfg, HalfInt::from_int(2), r));
    }
}
BENCHMARK(BM_GaugePotential);

static void BM_EscapeRate(benchmark::State& state) {
    const int two_f = static_cast<int>(state.range(0));
    const TrapConfig cfg = rubidium(two_f, two_f, 1e-2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(escape_rate(cfg));
    }
}
BENCHMARK(BM_EscapeRate)->Arg(1)->Arg(4)->Arg(12)->Arg(24);

static void BM_EscapeRateThermal(benchmark::State& state) {
    const TrapConfig cfg = rubidium(4, 4, 1e-2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(escape_rate_thermal(cfg, 1e-6));
    }
}
BENCHMARK(BM_EscapeRateThermal);

static void BM_NumericOverlap(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle::numeric_overlap(1e-6, 1e6, 1e-2));
    }
}
BENCHMARK(BM_NumericOverlap)->Unit(benchmark::kMillisecond);

static void BM_SecondOrderSum(benchmark::State& state) {
    const double chi0 = 1.0 / static_cast<double>(state.range(0));
    const TrapConfig cfg = rubidium(4, 4, chi0);
    const DerivedParams d = derive_params(cfg);
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle::second_order_sum(d, cfg.spin, 1e-2));
    }
}
BENCHMARK(BM_SecondOrderSum)->Arg(100)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
