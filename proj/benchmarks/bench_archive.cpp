#include <benchmark/benchmark.h>

#include "game/archive.hpp"
#include "game/rng.hpp"

using namespace game;

namespace {

BehaviorVector random_behavior(Rng& rng, std::size_t dim, DistanceKind kind) {
    BehaviorVector b;
    b.kind = kind;
    b.values.resize(dim);
    for (auto& v : b.values) v = rng.uniform() * 2.0 - 1.0;
    if (kind == DistanceKind::Cosine) b.values[0] += 2.5;
    return b;
}

void BM_GrowingArchiveUpdate(benchmark::State& state) {
    const auto capacity = static_cast<std::size_t>(state.range(0));
    const auto dim = static_cast<std::size_t>(state.range(1));
    const DistanceKind kind = dim > 8 ? DistanceKind::Cosine : DistanceKind::Euclidean;

    Rng rng(7);
    GrowingArchive archive(capacity, kind);
    std::uint64_t id = 0;
    // Warm to capacity so the steady-state O(n^2) path is measured.
    while (archive.size() < capacity)
        archive.update(++id, Fitness{rng.uniform(), 0}, random_behavior(rng, dim, kind));

    for (auto _ : state) {
        const auto r =
            archive.update(++id, Fitness{rng.uniform(), 0}, random_behavior(rng, dim, kind));
        benchmark::DoNotOptimize(r);
    }
}

void BM_FindCell(benchmark::State& state) {
    const auto capacity = static_cast<std::size_t>(state.range(0));
    Rng rng(11);
    GrowingArchive archive(capacity, DistanceKind::Cosine);
    std::uint64_t id = 0;
    while (archive.size() < capacity)
        archive.update(++id, Fitness{rng.uniform(), 0},
                       random_behavior(rng, 320, DistanceKind::Cosine));
    const BehaviorVector q = random_behavior(rng, 320, DistanceKind::Cosine);
    for (auto _ : state) benchmark::DoNotOptimize(archive.find_cell(q));
}

} // namespace

BENCHMARK(BM_GrowingArchiveUpdate)->Args({25, 320})->Args({25, 2})->Args({100, 320});
BENCHMARK(BM_FindCell)->Arg(25)->Arg(100);

BENCHMARK_MAIN();
