#include "game/domain.hpp"

#include <stdexcept>

namespace game {

namespace {

const BehaviorTree& as_tree(const Solution& s) {
    if (const auto* t = std::get_if<BehaviorTree>(&s)) return *t;
    throw std::invalid_argument("solution is not a behavior tree");
}

const PusherGenome& as_genome(const Solution& s) {
    if (const auto* g = std::get_if<PusherGenome>(&s)) return *g;
    throw std::invalid_argument("solution is not a pusher genome");
}

} // namespace

Solution SkirmishDomain::random_solution(Side, Rng& rng) const {
    return random_tree(rng, params_.max_leaves);
}

Solution SkirmishDomain::vary(const Solution& a, const Solution& b, Rng& rng,
                              OpTag& tag) const {
    BtVariationResult r = bt_variation(as_tree(a), as_tree(b), rng, params_.max_leaves);
    tag = r.applied == BtOp::Crossover ? OpTag::Crossover : OpTag::Mutation;
    return std::move(r.tree);
}

DuelOutcome SkirmishDomain::evaluate(const Solution& red, const Solution& blue) const {
    return skirmish_evaluate(as_tree(red), as_tree(blue), params_);
}

std::uint32_t SkirmishDomain::solution_size(const Solution& s) const {
    return static_cast<std::uint32_t>(node_count(as_tree(s)));
}

std::string SkirmishDomain::encode(const Solution& s) const { return bt_print(as_tree(s)); }

Solution SkirmishDomain::decode(const std::string& text) const { return bt_parse(text); }

std::unique_ptr<Domain> SkirmishDomain::with_duel_seed(std::uint64_t seed) const {
    SkirmishParams p = params_;
    p.duel_seed = seed;
    return std::make_unique<SkirmishDomain>(p);
}

Solution PusherDomain::random_solution(Side, Rng& rng) const {
    return random_pusher_genome(rng);
}

Solution PusherDomain::vary(const Solution& a, const Solution&, Rng& rng, OpTag& tag) const {
    tag = OpTag::Mutation;
    return pusher_variation(as_genome(a), params_, rng);
}

DuelOutcome PusherDomain::evaluate(const Solution& red, const Solution& blue) const {
    return pusher_evaluate(as_genome(red), as_genome(blue), params_);
}

std::uint32_t PusherDomain::solution_size(const Solution& s) const {
    return static_cast<std::uint32_t>(pusher_body_length(as_genome(s)));
}

std::string PusherDomain::encode(const Solution& s) const { return pusher_print(as_genome(s)); }

Solution PusherDomain::decode(const std::string& text) const { return pusher_parse(text); }

std::unique_ptr<Domain> PusherDomain::with_duel_seed(std::uint64_t) const {
    // The pusher is fully deterministic; reseeding is a no-op.
    return std::make_unique<PusherDomain>(params_);
}

} // namespace game
