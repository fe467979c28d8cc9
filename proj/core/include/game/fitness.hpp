#ifndef GAME_FITNESS_HPP
#define GAME_FITNESS_HPP

#include <compare>
#include <cstdint>

namespace game {

enum class FitnessMode : std::uint8_t { SingleObjective, Lexicographic };

// Fitness carried by every evaluation: the primary adversarial payoff plus the
// solution size, which only matters under the lexicographic mode (equal payoff
// resolved in favour of the smaller solution).
struct Fitness {
    double primary = 0.0;
    std::uint32_t size = 0;

    bool operator==(const Fitness&) const = default;
};

inline std::strong_ordering compare_fitness(const Fitness& a, const Fitness& b,
                                            FitnessMode mode) {
    if (a.primary < b.primary) return std::strong_ordering::less;
    if (a.primary > b.primary) return std::strong_ordering::greater;
    if (mode == FitnessMode::Lexicographic) {
        // Smaller solutions rank higher on a primary tie.
        if (a.size > b.size) return std::strong_ordering::less;
        if (a.size < b.size) return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

// Archive replacement rule: the incumbent wins ties in both modes.
inline bool fitness_beats(const Fitness& challenger, const Fitness& incumbent,
                          FitnessMode mode) {
    return compare_fitness(challenger, incumbent, mode) == std::strong_ordering::greater;
}

} // namespace game

#endif
