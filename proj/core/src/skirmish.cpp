#include "game/skirmish.hpp"

#include <algorithm>
#include <cmath>

namespace game {

namespace {

struct Unit {
    Side side;
    UnitType type;
    int x = 0, y = 0;
    double health = 0.0;
    double max_health = 0.0;
    bool alive = true;
};

float unit_intensity(const Unit& u) {
    // Side base at 0.33/0.66, ranged units one shade brighter.
    const float base = u.side == Side::Red ? 0.33f : 0.66f;
    return u.type == UnitType::Ranged ? base + 0.08f : base;
}

std::vector<Unit> initial_units(const SkirmishParams& p) {
    std::vector<Unit> units;
    const std::uint32_t n = p.units_per_type;
    const int h = static_cast<int>(p.arena_height);
    const int w = static_cast<int>(p.arena_width);
    // Evenly spread rows, identical for both sides (mirror-symmetric in x).
    auto row = [&](std::uint32_t i) {
        return static_cast<int>((2 * i + 1) * static_cast<std::uint32_t>(h) / (2 * n));
    };
    // Front lines sit just inside sight range of each other so duels engage
    // without navigation; ranged units start one sight-step behind.
    const int front_gap = std::max(2, static_cast<int>(p.sight_range) - 3);
    const int melee_col_red = (w - front_gap) / 2 - 1;
    const int ranged_col_red = std::max(0, melee_col_red - 4);
    for (int side = 0; side < 2; ++side) {
        const bool red = side == 0;
        const int melee_col = red ? melee_col_red : w - 1 - melee_col_red;
        const int ranged_col = red ? ranged_col_red : w - 1 - ranged_col_red;
        for (std::uint32_t i = 0; i < n; ++i)
            units.push_back(Unit{red ? Side::Red : Side::Blue, UnitType::Melee, melee_col,
                                 row(i), p.melee_health, p.melee_health, true});
        for (std::uint32_t i = 0; i < n; ++i)
            units.push_back(Unit{red ? Side::Red : Side::Blue, UnitType::Ranged, ranged_col,
                                 row(i), p.ranged_health, p.ranged_health, true});
    }
    return units;
}

Frame render(const std::vector<Unit>& units, const SkirmishParams& p) {
    Frame f = make_frame(p.arena_width, p.arena_height);
    for (const Unit& u : units) {
        if (!u.alive) continue;
        f.at(static_cast<std::size_t>(u.x), static_cast<std::size_t>(u.y)) = unit_intensity(u);
    }
    return f;
}

struct PendingAction {
    BtAction act;
    bool acted = false;
};

} // namespace

DuelOutcome skirmish_evaluate(const BehaviorTree& bt_red, const BehaviorTree& bt_blue,
                              const SkirmishParams& p) {
    std::vector<Unit> units = initial_units(p);
    const std::size_t total = units.size();
    const std::size_t per_side = p.units_per_side();

    std::array<std::optional<Vec2>, 2> markers;  // per-side shared target position
    std::array<double, 2> initial_health{0.0, 0.0};
    for (const Unit& u : units) initial_health[static_cast<int>(u.side)] += u.max_health;

    DuelOutcome out;
    out.max_steps = p.max_steps;
    out.arena_width = static_cast<double>(p.arena_width);
    out.arena_height = static_cast<double>(p.arena_height);

    auto record_positions = [&]() {
        std::vector<Vec2> red_pos, blue_pos;
        for (const Unit& u : units) {
            Vec2 v{static_cast<double>(u.x), static_cast<double>(u.y)};
            (u.side == Side::Red ? red_pos : blue_pos).push_back(v);
        }
        out.red.positions.push_back(std::move(red_pos));
        out.blue.positions.push_back(std::move(blue_pos));
    };

    out.frames.push_back(render(units, p));
    record_positions();

    const double sight2 = p.sight_range * p.sight_range;
    std::uint32_t step = 0;
    for (; step < p.max_steps; ++step) {
        // Decide from a snapshot of the step-start state.
        std::vector<PendingAction> pending(total);
        for (std::size_t i = 0; i < total; ++i) {
            const Unit& self = units[i];
            if (!self.alive) continue;
            Observation obs;
            obs.self = UnitView{i, self.side, self.type,
                                Vec2{static_cast<double>(self.x), static_cast<double>(self.y)},
                                self.health, self.max_health};
            obs.sight_range = p.sight_range;
            obs.attack_range = self.type == UnitType::Melee ? p.melee_range : p.ranged_range;
            obs.target_marker = markers[static_cast<int>(self.side)];
            for (std::size_t j = 0; j < total; ++j) {
                if (j == i || !units[j].alive) continue;
                const double dx = units[j].x - self.x, dy = units[j].y - self.y;
                if (dx * dx + dy * dy > sight2) continue;
                obs.visible.push_back(
                    UnitView{j, units[j].side, units[j].type,
                             Vec2{static_cast<double>(units[j].x), static_cast<double>(units[j].y)},
                             units[j].health, units[j].max_health});
            }
            // Both sides' unit k share one stream per step, maximizing
            // symmetry of mirrored duels.
            Rng rng = derive_rng(p.duel_seed, {step, i % per_side});
            obs.rng = &rng;
            const BehaviorTree& tree = self.side == Side::Red ? bt_red : bt_blue;
            pending[i] = PendingAction{bt_tick(tree, obs), true};
        }

        // Execute in fixed unit order; damage accumulates, deaths land at end.
        std::vector<double> damage(total, 0.0);
        for (std::size_t i = 0; i < total; ++i) {
            if (!pending[i].acted) continue;
            const BtAction& act = pending[i].act;
            SideTrace& trace = units[i].side == Side::Red ? out.red : out.blue;
            ++trace.action_counts[static_cast<std::size_t>(act.kind)];
            switch (act.kind) {
                case ActionKind::Attack: {
                    const std::size_t t = *act.target_unit;
                    damage[t] += units[i].type == UnitType::Melee ? p.melee_damage
                                                                  : p.ranged_damage;
                    break;
                }
                case ActionKind::Move:
                case ActionKind::GoTo: {
                    const int nx = std::clamp(units[i].x + static_cast<int>(act.step.x), 0,
                                              static_cast<int>(p.arena_width) - 1);
                    const int ny = std::clamp(units[i].y + static_cast<int>(act.step.y), 0,
                                              static_cast<int>(p.arena_height) - 1);
                    bool blocked = false;
                    if (nx != units[i].x || ny != units[i].y) {
                        for (std::size_t j = 0; j < total; ++j) {
                            if (j != i && units[j].alive && units[j].x == nx &&
                                units[j].y == ny) {
                                blocked = true;
                                break;
                            }
                        }
                        if (!blocked) {
                            units[i].x = nx;
                            units[i].y = ny;
                        }
                    }
                    break;
                }
                case ActionKind::SetTarget:
                    markers[static_cast<int>(units[i].side)] = act.mark;
                    break;
                case ActionKind::Stand:
                    break;
            }
        }

        // Action log entry per unit (255 = dead / no action).
        for (std::size_t i = 0; i < total; ++i) {
            SideTrace& trace = units[i].side == Side::Red ? out.red : out.blue;
            trace.action_log.push_back(
                pending[i].acted ? static_cast<std::uint8_t>(pending[i].act.kind) : 255);
        }

        std::array<bool, 2> any_alive{false, false};
        for (std::size_t i = 0; i < total; ++i) {
            if (units[i].alive && damage[i] > 0.0) {
                units[i].health -= damage[i];
                if (units[i].health <= 0.0) {
                    units[i].health = 0.0;
                    units[i].alive = false;
                }
            }
            if (units[i].alive) any_alive[static_cast<int>(units[i].side)] = true;
        }

        out.frames.push_back(render(units, p));
        record_positions();

        if (!any_alive[0] || !any_alive[1]) {
            ++step;
            break;
        }
    }
    out.completion_steps = step;

    std::array<double, 2> remaining{0.0, 0.0};
    std::array<double, 2> health_frac_sum{0.0, 0.0};
    for (const Unit& u : units) {
        remaining[static_cast<int>(u.side)] += u.health;
        health_frac_sum[static_cast<int>(u.side)] += u.health / u.max_health;
    }
    out.fitness_red = (initial_health[1] - remaining[1]) / initial_health[1];
    out.fitness_blue = (initial_health[0] - remaining[0]) / initial_health[0];
    out.red.mean_health_fraction = health_frac_sum[0] / static_cast<double>(per_side);
    out.blue.mean_health_fraction = health_frac_sum[1] / static_cast<double>(per_side);
    out.winner = out.fitness_red > out.fitness_blue
                     ? Winner::Red
                     : (out.fitness_blue > out.fitness_red ? Winner::Blue : Winner::Draw);
    return out;
}

} // namespace game
