#ifndef GAME_PUSHER_HPP
#define GAME_PUSHER_HPP

#include <array>
#include <cstdint>
#include <string>

#include "game/duel.hpp"
#include "game/rng.hpp"

namespace game {

// Voxel strip genome. Cell values: 0 empty, 1 rigid, 2 soft, 3 horizontal
// in-phase actuator, 4 vertical in-phase, 5 horizontal anti-phase,
// 6 vertical anti-phase. Vertical actuators add mass but no thrust on the
// 1-D arena. Valid genomes have >= 1 actuated cell and a contiguous body.
inline constexpr std::size_t kPusherCells = 9;
inline constexpr int kPusherMaxCellValue = 6;

struct PusherGenome {
    std::array<int, kPusherCells> cells{};

    bool operator==(const PusherGenome&) const = default;
};

bool pusher_valid(const PusherGenome& g);
PusherGenome random_pusher_genome(Rng& rng);
std::string pusher_print(const PusherGenome& g);
PusherGenome pusher_parse(const std::string& text);
std::size_t pusher_hamming(const PusherGenome& a, const PusherGenome& b);

struct PusherParams {
    double arena_width = 30.0;
    std::uint32_t max_steps = 200;
    std::uint32_t sine_period = 12;
    double amplitude = 2.0;
    double rigid_mass = 2.0;  // other non-empty cells have mass 1
    std::uint32_t k_mutations = 3;
    std::uint32_t frame_height = 16;  // strip replicated into rows for pooling

    bool operator==(const PusherParams&) const = default;
};

// Body length (non-empty cell count) and total mass of a genome.
double pusher_body_length(const PusherGenome& g);
double pusher_mass(const PusherGenome& g, const PusherParams& p);

// Signed velocity at timestep t: summed horizontal actuator thrust divided by
// total mass (units per step, positive = toward the arena center).
double pusher_velocity(const PusherGenome& g, const PusherParams& p, std::uint32_t t);

// Deterministic duel: both robots simulated in their own edge frame, pushing
// resolved by momentum, fitness = fraction of steps strictly closer to the
// arena center (ties split evenly), so fitness_red + fitness_blue == 1.
DuelOutcome pusher_evaluate(const PusherGenome& g_red, const PusherGenome& g_blue,
                            const PusherParams& params);

// Exactly k sub-operations, each uniformly add/delete/mutate; infeasible
// draws are redrawn up to 10 times then skipped. No crossover in this domain.
PusherGenome pusher_variation(const PusherGenome& genome, const PusherParams& params,
                              Rng& rng);

} // namespace game

#endif
