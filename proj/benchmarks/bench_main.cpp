#include <benchmark/benchmark.h>

#include "vacbound/casimir.hpp"
#include "vacbound/energy_conditions.hpp"
#include "vacbound/tensor.hpp"
#include "vacbound/trace_method.hpp"
#include "vacbound/wall.hpp"

namespace {

using namespace vacbound;

void BM_RestFrameDecompose(benchmark::State& state) {
    Mat4 m{};
    m[0][0] = 2.0;
    m[1][1] = 0.5;
    m[2][2] = -0.3;
    m[3][3] = 0.1;
    m[1][2] = m[2][1] = 0.2;
    m[2][3] = m[3][2] = -0.1;
    const auto T = StressEnergyTensor::from_components(m);
    for (auto _ : state) benchmark::DoNotOptimize(rest_frame_decompose(T));
}
BENCHMARK(BM_RestFrameDecompose);

void BM_CovariantVerify(benchmark::State& state) {
    const auto T = StressEnergyTensor::diagonal(2.0, 0.5, -0.3, 0.1);
    CovariantSamplingParams p;
    p.n_samples = std::size_t(state.range(0));
    p.n_threads = std::size_t(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(covariant_verify(T, ConditionKind::WEC, p));
}
BENCHMARK(BM_CovariantVerify)->Args({10000, 1})->Args({10000, 4})->Args({100000, 4});

void BM_EnumerateCubeModes(benchmark::State& state) {
    const auto cavity = CavitySpec::box(1.0, {1.0, 1.0, 1.0});
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_modes(cavity, std::size_t(state.range(0))));
}
BENCHMARK(BM_EnumerateCubeModes)->Arg(100)->Arg(200);

void BM_CutoffFit(benchmark::State& state) {
    const auto sp = enumerate_modes(CavitySpec::box(1.0, {1.0, 1.0, 1.0}), 200);
    const auto cuts = default_cutoffs(sp);
    for (auto _ : state) benchmark::DoNotOptimize(vacuum_energy_cutoff(sp, cuts));
}
BENCHMARK(BM_CutoffFit);

void BM_ZetaBoxAlpha(benchmark::State& state) {
    const auto cavity = CavitySpec::box(1.0, {1.0, 2.0, 3.0});
    for (auto _ : state) benchmark::DoNotOptimize(vacuum_energy_zeta(cavity));
}
BENCHMARK(BM_ZetaBoxAlpha);

void BM_ShellAudit(benchmark::State& state) {
    const double E_v = -0.1;
    auto shell = equilibrium_shell(E_v, 1.0, 0.01);
    shell.rho_w = 3.0 * shell.P;
    for (auto _ : state) {
        auto mesh = make_shell_mesh(shell, std::size_t(state.range(0)),
                                    2 * std::size_t(state.range(0)));
        benchmark::DoNotOptimize(positivity_audit(E_v, mesh));
    }
}
BENCHMARK(BM_ShellAudit)->Arg(32)->Arg(64);

void BM_BeltramiField(benchmark::State& state) {
    const auto seed = smooth_bump(0.6);
    for (auto _ : state) {
        auto f = beltrami_field(seed, GridSpec{std::size_t(state.range(0)), 1.0});
        benchmark::DoNotOptimize(virial_residual(f));
    }
}
BENCHMARK(BM_BeltramiField)->Arg(33)->Arg(65);

}  // namespace

BENCHMARK_MAIN();
