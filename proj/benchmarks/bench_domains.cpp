#include <benchmark/benchmark.h>

#include "game/descriptor.hpp"
#include "game/pusher.hpp"
#include "game/skirmish.hpp"

using namespace game;

namespace {

void BM_SkirmishDuel(benchmark::State& state) {
    Rng rng(3);
    const BehaviorTree red = random_tree(rng);
    const BehaviorTree blue = random_tree(rng);
    SkirmishParams params;
    for (auto _ : state) benchmark::DoNotOptimize(skirmish_evaluate(red, blue, params));
}

void BM_PusherDuel(benchmark::State& state) {
    Rng rng(4);
    const PusherGenome red = random_pusher_genome(rng);
    const PusherGenome blue = random_pusher_genome(rng);
    PusherParams params;
    for (auto _ : state) benchmark::DoNotOptimize(pusher_evaluate(red, blue, params));
}

void BM_PusherDuelWithDescriptor(benchmark::State& state) {
    Rng rng(4);
    const PusherGenome red = random_pusher_genome(rng);
    const PusherGenome blue = random_pusher_genome(rng);
    PusherParams params;
    DescriptorSpec spec;  // frame embedding, d=8, f=5
    for (auto _ : state) {
        DuelOutcome out = pusher_evaluate(red, blue, params);
        benchmark::DoNotOptimize(describe(out, Side::Red, spec));
    }
}

void BM_BtVariation(benchmark::State& state) {
    Rng rng(5);
    const BehaviorTree a = random_tree(rng);
    const BehaviorTree b = random_tree(rng);
    for (auto _ : state) benchmark::DoNotOptimize(bt_variation(a, b, rng));
}

void BM_BtTick(benchmark::State& state) {
    Rng rng(6);
    const BehaviorTree tree = random_tree(rng);
    Observation obs;
    obs.self = UnitView{0, Side::Red, UnitType::Melee, Vec2{16, 16}, 8.0, 8.0};
    obs.sight_range = 8.0;
    obs.attack_range = 1.0;
    for (std::size_t u = 1; u <= 8; ++u)
        obs.visible.push_back(UnitView{u, u % 2 ? Side::Blue : Side::Red, UnitType::Ranged,
                                       Vec2{16.0 + static_cast<double>(u % 5) - 2, 14.0},
                                       4.0, 4.0});
    Rng action_rng(9);
    obs.rng = &action_rng;
    for (auto _ : state) benchmark::DoNotOptimize(bt_tick(tree, obs));
}

} // namespace

BENCHMARK(BM_SkirmishDuel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PusherDuel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PusherDuelWithDescriptor)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BtVariation);
BENCHMARK(BM_BtTick);

BENCHMARK_MAIN();
