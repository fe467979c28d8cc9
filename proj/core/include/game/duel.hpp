#ifndef GAME_DUEL_HPP
#define GAME_DUEL_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "game/frame.hpp"

namespace game {

enum class Side : std::uint8_t { Red = 0, Blue = 1 };

inline Side opposite(Side s) { return s == Side::Red ? Side::Blue : Side::Red; }
inline const char* side_name(Side s) { return s == Side::Red ? "red" : "blue"; }
Side side_from_string(const std::string& name);

// Action categories shared by both domains for entropy/analysis purposes.
// The pusher only ever emits Stand (its control is passive).
enum class ActionKind : std::uint8_t { Stand = 0, Attack, Move, GoTo, SetTarget };
inline constexpr std::size_t kActionKinds = 5;

enum class Winner : std::uint8_t { Red = 0, Blue = 1, Draw = 2 };

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Vec2&) const = default;
};

// Per-side observables of one evaluation.
struct SideTrace {
    // positions[t][u] = unit u's position at timestep t (dead units frozen at
    // their last position).
    std::vector<std::vector<Vec2>> positions;
    std::array<std::uint32_t, kActionKinds> action_counts{};
    // Flattened [t * units + u] action categories; empty for the pusher.
    std::vector<std::uint8_t> action_log;
    std::optional<double> mean_health_fraction;  // skirmish only
    std::optional<std::vector<int>> genome_values;  // pusher only
};

struct DuelOutcome {
    double fitness_red = 0.0;
    double fitness_blue = 0.0;
    std::uint32_t completion_steps = 0;
    std::uint32_t max_steps = 0;
    Winner winner = Winner::Draw;
    std::vector<Frame> frames;  // one per recorded timestep, t = 0 first
    SideTrace red;
    SideTrace blue;
    double arena_width = 1.0;   // position normalization for descriptors
    double arena_height = 1.0;
    std::uint64_t eval_key = 0;  // assigned by the engine, keys external embeddings

    double fitness_of(Side s) const { return s == Side::Red ? fitness_red : fitness_blue; }
    const SideTrace& trace_of(Side s) const { return s == Side::Red ? red : blue; }
};

} // namespace game

#endif
