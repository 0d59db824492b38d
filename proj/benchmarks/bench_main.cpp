#include <benchmark/benchmark.h>

#include "sdisde/engines.hpp"
#include "sdisde/functions.hpp"
#include "sdisde/sdis.hpp"
#include "sdisde/variation.hpp"

using namespace sdisde;

namespace {

void BM_CorrectComponent(benchmark::State& state) {
    const auto kind = kAllSdis[static_cast<std::size_t>(state.range(0))];
    RngStream rng(1);
    const double excursions[] = {1.3, -0.2, 1.05, -0.7};
    std::size_t k = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(correct_component(kind, excursions[k], 0.5, 0.0, 1.0, rng));
        k = (k + 1) % 4;
    }
    state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_CorrectComponent)->DenseRange(0, static_cast<int>(kAllSdis.size()) - 1);

void BM_ApplySdis(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto domain = BoxDomain::hypercube(n, 0.0, 1.0);
    RngStream rng(2);
    Vector target(n), trial(n);
    for (std::size_t i = 0; i < n; ++i) {
        target[i] = rng.uniform();
        trial[i] = rng.uniform(-0.5, 1.5);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_sdis(SdisKind::MIR, trial, target, domain, rng));
    }
}
BENCHMARK(BM_ApplySdis)->Arg(5)->Arg(30)->Arg(100);

void BM_MutateAndCrossover(benchmark::State& state) {
    const std::size_t n = 30;
    RngStream rng(3);
    const auto domain = BoxDomain::hypercube(n, 0.0, 1.0);
    const auto pop = init_population(100, domain, rng);
    std::size_t i = 0;
    for (auto _ : state) {
        const auto mutant = mutate_rand1(pop, i, 0.5, rng);
        benchmark::DoNotOptimize(crossover(Crossover::Bin, pop[i].position, mutant, 0.9, rng));
        i = (i + 1) % pop.size();
    }
}
BENCHMARK(BM_MutateAndCrossover);

// Whole runs; items processed are function evaluations.
void BM_Run(benchmark::State& state) {
    const auto engine = static_cast<EngineKind>(state.range(0));
    EngineConfig cfg;
    cfg.engine = engine;
    cfg.params = {0.5, 0.9, Crossover::Bin};
    cfg.population_size = 50;
    cfg.sdis = SdisKind::MIR;
    cfg.max_evaluations = 20000;
    cfg.seed = 4;
    const auto objective = make_function({"rastrigin", 10, 1}, 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run(cfg, *objective));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * cfg.max_evaluations));
    state.SetLabel(std::string(to_string(engine)));
}
BENCHMARK(BM_Run)
    ->Arg(static_cast<int>(EngineKind::DeRand1))
    ->Arg(static_cast<int>(EngineKind::Shade))
    ->Arg(static_cast<int>(EngineKind::LShade))
    ->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
