#ifndef GAME_DOMAIN_HPP
#define GAME_DOMAIN_HPP

#include <memory>
#include <string>
#include <variant>

#include "game/behavior_tree.hpp"
#include "game/duel.hpp"
#include "game/pusher.hpp"
#include "game/rng.hpp"
#include "game/skirmish.hpp"

namespace game {

using Solution = std::variant<BehaviorTree, PusherGenome>;

enum class OpTag : std::uint8_t { Random = 0, Mutation = 1, Crossover = 2 };

inline const char* op_tag_name(OpTag t) {
    switch (t) {
        case OpTag::Random: return "random";
        case OpTag::Mutation: return "mutation";
        case OpTag::Crossover: return "crossover";
    }
    return "?";
}

// An adversarial evaluation domain. Evaluations are pure functions of the two
// solutions and the (configured) duel seed, so they can run on any thread.
class Domain {
public:
    virtual ~Domain() = default;

    virtual std::string name() const = 0;
    virtual Solution random_solution(Side side, Rng& rng) const = 0;
    // Two-parent variation; domains without crossover ignore the second parent.
    virtual Solution vary(const Solution& a, const Solution& b, Rng& rng,
                          OpTag& tag) const = 0;
    virtual DuelOutcome evaluate(const Solution& red, const Solution& blue) const = 0;
    virtual std::uint32_t solution_size(const Solution& s) const = 0;
    virtual std::string encode(const Solution& s) const = 0;
    virtual Solution decode(const std::string& text) const = 0;
    // Reseeded tournaments: identical domain, different duel seed.
    virtual std::unique_ptr<Domain> with_duel_seed(std::uint64_t seed) const = 0;
};

class SkirmishDomain final : public Domain {
public:
    explicit SkirmishDomain(SkirmishParams params) : params_(params) {}

    std::string name() const override { return "skirmish"; }
    Solution random_solution(Side side, Rng& rng) const override;
    Solution vary(const Solution& a, const Solution& b, Rng& rng, OpTag& tag) const override;
    DuelOutcome evaluate(const Solution& red, const Solution& blue) const override;
    std::uint32_t solution_size(const Solution& s) const override;
    std::string encode(const Solution& s) const override;
    Solution decode(const std::string& text) const override;
    std::unique_ptr<Domain> with_duel_seed(std::uint64_t seed) const override;

    const SkirmishParams& params() const { return params_; }

private:
    SkirmishParams params_;
};

class PusherDomain final : public Domain {
public:
    explicit PusherDomain(PusherParams params) : params_(params) {}

    std::string name() const override { return "pusher"; }
    Solution random_solution(Side side, Rng& rng) const override;
    Solution vary(const Solution& a, const Solution& b, Rng& rng, OpTag& tag) const override;
    DuelOutcome evaluate(const Solution& red, const Solution& blue) const override;
    std::uint32_t solution_size(const Solution& s) const override;
    std::string encode(const Solution& s) const override;
    Solution decode(const std::string& text) const override;
    std::unique_ptr<Domain> with_duel_seed(std::uint64_t seed) const override;

    const PusherParams& params() const { return params_; }

private:
    PusherParams params_;
};

} // namespace game

#endif
