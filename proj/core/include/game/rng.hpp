#ifndef GAME_RNG_HPP
#define GAME_RNG_HPP

#include <cassert>
#include <cstdint>
#include <utility>
#include <vector>

namespace game {

// All randomness in the engine flows through this header. Streams are derived
// from a master seed plus integer tags, never from global state or the clock,
// so any evaluation can be replayed in isolation and parallel batching cannot
// reorder draws.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256** seeded via splitmix64.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n). Multiply-shift keeps this portable and branch-free.
    std::uint64_t uniform_index(std::uint64_t n) {
        assert(n > 0);
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    bool chance(double p) { return uniform() < p; }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(uniform_index(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

// Derives the seed for a named sub-stream. Tags are mixed one by one so that
// derive(s, {a, b}) != derive(s, {b, a}).
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> tags) {
    std::uint64_t sm = master;
    std::uint64_t out = splitmix64(sm);
    for (std::uint64_t tag : tags) {
        sm = out ^ tag;
        out = splitmix64(sm);
    }
    return out;
}

inline Rng derive_rng(std::uint64_t master, std::initializer_list<std::uint64_t> tags) {
    return Rng(derive_seed(master, tags));
}

// Fixed tag values naming the top-level stream purposes.
namespace stream {
inline constexpr std::uint64_t kInitialTasks = 0x01;
inline constexpr std::uint64_t kGeneration = 0x02;   // + generation index
inline constexpr std::uint64_t kEvaluation = 0x03;   // + generation, iteration
inline constexpr std::uint64_t kTaskSelect = 0x04;   // + generation index
inline constexpr std::uint64_t kCvtInit = 0x05;
} // namespace stream

} // namespace game

#endif
