#ifndef GAME_TOURNAMENT_HPP
#define GAME_TOURNAMENT_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "game/behavior_vector.hpp"
#include "game/duel.hpp"
#include "game/fitness.hpp"

namespace game {

// One evaluated pairing inside a tournament. Sides A and B are fixed per
// matrix; behaviors are kept so projections can be computed post hoc, and
// action-category counts feed the entropy measure without storing traces.
struct DuelRecord {
    Fitness fitness_a;
    Fitness fitness_b;
    BehaviorVector behavior_a;
    BehaviorVector behavior_b;
    std::array<std::uint32_t, kActionKinds> actions_a{};
    std::array<std::uint32_t, kActionKinds> actions_b{};
    Winner winner = Winner::Draw;

    bool operator==(const DuelRecord&) const = default;
};

struct TournamentMatrix {
    Side side_a = Side::Red;
    std::vector<std::uint64_t> ids_a;  // row solutions
    std::vector<std::uint64_t> ids_b;  // column solutions
    std::vector<DuelRecord> entries;   // row-major, ids_a.size() * ids_b.size()

    std::size_t rows() const { return ids_a.size(); }
    std::size_t cols() const { return ids_b.size(); }
    const DuelRecord& at(std::size_t r, std::size_t c) const {
        return entries[r * cols() + c];
    }
    DuelRecord& at(std::size_t r, std::size_t c) { return entries[r * cols() + c]; }

    bool operator==(const TournamentMatrix&) const = default;
};

} // namespace game

#endif
