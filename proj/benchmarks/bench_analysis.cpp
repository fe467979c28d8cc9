#include <benchmark/benchmark.h>

#include "game/analysis.hpp"
#include "game/clustering.hpp"
#include "game/rng.hpp"

using namespace game;

namespace {

std::vector<BehaviorVector> random_behaviors(std::size_t n, std::size_t dim,
                                             std::uint64_t seed) {
    Rng rng(seed);
    std::vector<BehaviorVector> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        BehaviorVector b;
        b.kind = DistanceKind::Cosine;
        b.values.resize(dim);
        for (auto& v : b.values) v = rng.uniform() + 0.05;
        out.push_back(std::move(b));
    }
    return out;
}

void BM_Pca2(benchmark::State& state) {
    const auto behaviors = random_behaviors(static_cast<std::size_t>(state.range(0)), 320, 1);
    for (auto _ : state) benchmark::DoNotOptimize(pca2(behaviors));
}

void BM_Kmeans(benchmark::State& state) {
    const auto behaviors = random_behaviors(static_cast<std::size_t>(state.range(0)), 320, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            kmeans_behaviors(behaviors, static_cast<std::size_t>(state.range(1)), 3));
}

void BM_Elo(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng rng(4);
    TournamentMatrix m;
    m.side_a = Side::Red;
    for (std::size_t i = 0; i < n; ++i) m.ids_a.push_back(i);
    for (std::size_t i = 0; i < n; ++i) m.ids_b.push_back(1000 + i);
    m.entries.resize(n * n);
    for (auto& e : m.entries) {
        const double f = rng.uniform();
        e.fitness_a = Fitness{f, 0};
        e.fitness_b = Fitness{1.0 - f, 0};
    }
    for (auto _ : state) benchmark::DoNotOptimize(elo(m));
}

} // namespace

BENCHMARK(BM_Pca2)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Kmeans)->Args({80, 10})->Args({500, 50})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Elo)->Arg(36)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
