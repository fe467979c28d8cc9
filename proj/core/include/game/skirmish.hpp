#ifndef GAME_SKIRMISH_HPP
#define GAME_SKIRMISH_HPP

#include <cstdint>

#include "game/behavior_tree.hpp"
#include "game/duel.hpp"

namespace game {

// Grid battle between two sides of shared-controller units. All constants are
// part of the domain definition and frozen in the run manifest.
struct SkirmishParams {
    std::uint32_t arena_width = 32;
    std::uint32_t arena_height = 32;
    std::uint32_t units_per_type = 4;  // per side: melee + ranged columns
    double melee_damage = 2.0;
    double ranged_damage = 1.0;
    double melee_range = 1.0;   // Chebyshev reach
    double ranged_range = 5.0;  // Chebyshev reach
    double melee_health = 8.0;
    double ranged_health = 4.0;
    double sight_range = 8.0;   // Euclidean
    std::uint32_t max_steps = 64;
    std::uint64_t duel_seed = 0;
    std::uint32_t max_leaves = kDefaultMaxLeaves;

    bool operator==(const SkirmishParams&) const = default;

    std::uint32_t units_per_side() const { return 2 * units_per_type; }
};

// Deterministic duel: units act simultaneously from a per-step snapshot, with
// conflicts resolved in fixed unit-index order; damage lands at end of step.
// Fitness per side = fraction of the opposing side's initial health depleted.
DuelOutcome skirmish_evaluate(const BehaviorTree& bt_red, const BehaviorTree& bt_blue,
                              const SkirmishParams& params);

} // namespace game

#endif
