#include <benchmark/benchmark.h>

#include "fsdiff/diffusion.hpp"
#include "fsdiff/fsdist.hpp"
#include "fsdiff/fspoly.hpp"
#include "fsdiff/spectral.hpp"

using namespace fsdiff;

namespace {

const FsParams kP(5.0, 20.0, 0.5);

void BM_pdf(benchmark::State& state) {
    double x = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fsdist::pdf(kP, x));
        x = x < 8.0 ? x + 0.1 : 0.3;
    }
}
BENCHMARK(BM_pdf);

void BM_eval_poly(benchmark::State& state) {
    auto sys = fspoly::build_system(kP);
    const auto& top = sys.back();
    double x = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fspoly::eval_poly(top, x));
        x = x < 8.0 ? x + 0.1 : 0.3;
    }
}
BENCHMARK(BM_eval_poly);

void BM_f1_series(benchmark::State& state) {
    double lam = spectral::cutoff(kP) * 1.5;
    for (auto _ : state)
        benchmark::DoNotOptimize(spectral::f1(kP, lam, 1.2));
}
BENCHMARK(BM_f1_series);

void BM_f1_connection(benchmark::State& state) {
    double lam = spectral::cutoff(kP) * 1.5;
    for (auto _ : state)
        benchmark::DoNotOptimize(spectral::f1(kP, lam, 12.0));
}
BENCHMARK(BM_f1_connection);

void BM_density_eval(benchmark::State& state) {
    auto ctx = spectral::make_context(kP);
    spectral::DensityEvaluator ev(ctx, 1.2, 0.5);
    double x = 0.4;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ev(x));
        x = x < 4.0 ? x + 0.2 : 0.4;
    }
}
BENCHMARK(BM_density_eval);

void BM_density_setup(benchmark::State& state) {
    auto ctx = spectral::make_context(kP);
    for (auto _ : state) {
        spectral::DensityEvaluator ev(ctx, 1.2, 0.5);
        benchmark::DoNotOptimize(ev.quadrature().k.size());
    }
}
BENCHMARK(BM_density_setup);

void BM_simulate_1k_steps(benchmark::State& state) {
    std::uint64_t seed = 1;
    for (auto _ : state) {
        auto path = diffusion::simulate(FsParams(5.0, 20.0, 1.0), 1.2, 10.0,
                                        0.01, diffusion::Scheme::Milstein,
                                        seed++);
        benchmark::DoNotOptimize(path.values.back());
    }
}
BENCHMARK(BM_simulate_1k_steps);

} // namespace

BENCHMARK_MAIN();
