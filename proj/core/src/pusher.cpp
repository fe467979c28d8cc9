#include "game/pusher.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace game {

bool pusher_valid(const PusherGenome& g) {
    bool any_actuated = false;
    int first = -1, last = -1;
    for (std::size_t i = 0; i < kPusherCells; ++i) {
        const int v = g.cells[i];
        if (v < 0 || v > kPusherMaxCellValue) return false;
        if (v == 0) continue;
        if (first < 0) first = static_cast<int>(i);
        last = static_cast<int>(i);
        if (v >= 3) any_actuated = true;
    }
    if (first < 0 || !any_actuated) return false;
    // Contiguity: no empty cell inside the body span.
    for (int i = first; i <= last; ++i)
        if (g.cells[static_cast<std::size_t>(i)] == 0) return false;
    return true;
}

PusherGenome random_pusher_genome(Rng& rng) {
    // Rejection sampling over the uniform cell distribution.
    for (;;) {
        PusherGenome g;
        for (auto& c : g.cells)
            c = static_cast<int>(rng.uniform_index(kPusherMaxCellValue + 1));
        if (pusher_valid(g)) return g;
    }
}

std::string pusher_print(const PusherGenome& g) {
    std::string s;
    s.reserve(kPusherCells);
    for (int c : g.cells) s.push_back(static_cast<char>('0' + c));
    return s;
}

PusherGenome pusher_parse(const std::string& text) {
    if (text.size() != kPusherCells)
        throw std::invalid_argument("pusher genome must have " +
                                    std::to_string(kPusherCells) + " cells");
    PusherGenome g;
    for (std::size_t i = 0; i < kPusherCells; ++i) {
        const char c = text[i];
        if (c < '0' || c > '0' + kPusherMaxCellValue)
            throw std::invalid_argument("bad pusher cell value: " + text);
        g.cells[i] = c - '0';
    }
    if (!pusher_valid(g)) throw std::invalid_argument("invalid pusher genome: " + text);
    return g;
}

std::size_t pusher_hamming(const PusherGenome& a, const PusherGenome& b) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < kPusherCells; ++i)
        if (a.cells[i] != b.cells[i]) ++d;
    return d;
}

double pusher_body_length(const PusherGenome& g) {
    double n = 0;
    for (int c : g.cells)
        if (c != 0) n += 1.0;
    return n;
}

double pusher_mass(const PusherGenome& g, const PusherParams& p) {
    double m = 0.0;
    for (int c : g.cells) {
        if (c == 0) continue;
        m += c == 1 ? p.rigid_mass : 1.0;
    }
    return m;
}

double pusher_velocity(const PusherGenome& g, const PusherParams& p, std::uint32_t t) {
    double thrust = 0.0;
    const double omega = 2.0 * std::numbers::pi * static_cast<double>(t) /
                         static_cast<double>(p.sine_period);
    for (int c : g.cells) {
        if (c == 3) thrust += p.amplitude * std::sin(omega);
        else if (c == 5) thrust += p.amplitude * std::sin(omega + std::numbers::pi);
        // 4 and 6 are vertical: mass only.
    }
    return thrust / pusher_mass(g, p);
}

namespace {

Frame render_strip(double red_left, double red_len, double blue_left_arena,
                   double blue_len, const PusherParams& p) {
    const auto w = static_cast<std::size_t>(p.arena_width);
    Frame f = make_frame(w, p.frame_height);
    auto paint = [&](double left, double len, float intensity) {
        const double right = left + len;
        for (std::size_t col = 0; col < w; ++col) {
            const double c0 = static_cast<double>(col), c1 = c0 + 1.0;
            const double cover = std::min(right, c1) - std::max(left, c0);
            if (cover <= 0.0) continue;
            const float v = intensity * static_cast<float>(std::min(1.0, cover));
            for (std::size_t row = 0; row < p.frame_height; ++row)
                f.at(col, row) = std::min(1.0f, f.at(col, row) + v);
        }
    };
    paint(red_left, red_len, 0.33f);
    paint(blue_left_arena, blue_len, 0.66f);
    return f;
}

} // namespace

DuelOutcome pusher_evaluate(const PusherGenome& g_red, const PusherGenome& g_blue,
                            const PusherParams& p) {
    if (!pusher_valid(g_red) || !pusher_valid(g_blue))
        throw std::invalid_argument("pusher_evaluate: invalid genome");

    const double len_r = pusher_body_length(g_red);
    const double len_b = pusher_body_length(g_blue);
    const double mass_r = pusher_mass(g_red, p);
    const double mass_b = pusher_mass(g_blue, p);
    const double half = p.arena_width / 2.0;

    // Each robot lives in its own frame: position = distance of its trailing
    // edge from its own wall, velocity positive toward the center. Identical
    // genomes then follow bit-identical trajectories, which keeps mirror
    // duels exactly tied.
    double pos_r = 0.0, pos_b = 0.0;

    DuelOutcome out;
    out.max_steps = p.max_steps;
    out.arena_width = p.arena_width;
    out.arena_height = static_cast<double>(p.frame_height);
    out.red.genome_values = std::vector<int>(g_red.cells.begin(), g_red.cells.end());
    out.blue.genome_values = std::vector<int>(g_blue.cells.begin(), g_blue.cells.end());

    auto record = [&]() {
        const double red_mid = pos_r + len_r / 2.0;
        const double blue_mid_arena = p.arena_width - (pos_b + len_b / 2.0);
        out.red.positions.push_back({Vec2{red_mid, 0.0}});
        out.blue.positions.push_back({Vec2{blue_mid_arena, 0.0}});
        out.frames.push_back(render_strip(pos_r, len_r,
                                          p.arena_width - pos_b - len_b, len_b, p));
    };
    record();

    std::uint64_t red_half_points = 0;  // closer step = 2 points, tie = 1 each
    for (std::uint32_t t = 0; t < p.max_steps; ++t) {
        const double v_r = pusher_velocity(g_red, p, t);
        const double v_b = pusher_velocity(g_blue, p, t);
        pos_r = std::clamp(pos_r + v_r, 0.0, p.arena_width - len_r);
        pos_b = std::clamp(pos_b + v_b, 0.0, p.arena_width - len_b);

        // Overlap: leading edges measured from opposite walls.
        const double overlap = pos_r + len_r + pos_b + len_b - p.arena_width;
        if (overlap > 0.0) {
            const double mom_r = std::abs(mass_r * v_r);
            const double mom_b = std::abs(mass_b * v_b);
            if (mom_r > mom_b) {
                pos_b -= overlap;
            } else if (mom_b > mom_r) {
                pos_r -= overlap;
            } else {
                pos_r -= overlap / 2.0;
                pos_b -= overlap / 2.0;
            }
            // A robot pushed past its wall transfers the residual back.
            if (pos_b < 0.0) {
                pos_r += pos_b;
                pos_b = 0.0;
            }
            if (pos_r < 0.0) {
                pos_b += pos_r;
                pos_r = 0.0;
            }
        }

        // Distance of each midpoint to the center, computed identically in
        // both frames so mirrored states compare exactly equal.
        const double dist_r = std::abs(half - (pos_r + len_r / 2.0));
        const double dist_b = std::abs(half - (pos_b + len_b / 2.0));
        if (dist_r < dist_b) red_half_points += 2;
        else if (dist_r == dist_b) red_half_points += 1;

        record();
    }
    out.completion_steps = p.max_steps;

    out.fitness_red = static_cast<double>(red_half_points) /
                      static_cast<double>(2 * static_cast<std::uint64_t>(p.max_steps));
    out.fitness_blue = 1.0 - out.fitness_red;
    out.winner = out.fitness_red > out.fitness_blue
                     ? Winner::Red
                     : (out.fitness_blue > out.fitness_red ? Winner::Blue : Winner::Draw);
    return out;
}

PusherGenome pusher_variation(const PusherGenome& genome, const PusherParams& p, Rng& rng) {
    PusherGenome g = genome;
    for (std::uint32_t k = 0; k < p.k_mutations; ++k) {
        const std::uint64_t op = rng.uniform_index(3);  // add / delete / mutate
        bool done = false;
        for (int attempt = 0; attempt < 10 && !done; ++attempt) {
            PusherGenome trial = g;
            const std::size_t cell = rng.uniform_index(kPusherCells);
            if (op == 0) {
                if (trial.cells[cell] != 0) continue;
                trial.cells[cell] = 1 + static_cast<int>(rng.uniform_index(kPusherMaxCellValue));
            } else if (op == 1) {
                if (trial.cells[cell] == 0) continue;
                trial.cells[cell] = 0;
            } else {
                if (trial.cells[cell] == 0) continue;
                const int nv = 1 + static_cast<int>(rng.uniform_index(kPusherMaxCellValue));
                if (nv == trial.cells[cell]) continue;
                trial.cells[cell] = nv;
            }
            if (pusher_valid(trial)) {
                g = trial;
                done = true;
            }
        }
        // Infeasible sub-operation after 10 attempts: skipped.
    }
    return g;
}

} // namespace game
