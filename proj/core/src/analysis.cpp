#include "game/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "game/parallel.hpp"
#include "game/rng.hpp"

namespace game {

TournamentMatrix round_robin(const TaskSet& set_a, const TaskSet& set_b,
                             const GameConfig& config, const Domain& domain,
                             const EmbeddingTable* external, std::size_t jobs) {
    if (set_a.solutions.empty() || set_b.solutions.empty())
        throw std::invalid_argument("round_robin: empty solution set");
    if (set_a.side == set_b.side)
        throw std::invalid_argument("round_robin: sets must take opposite sides");

    TournamentMatrix m;
    m.side_a = set_a.side;
    for (const auto& s : set_a.solutions) m.ids_a.push_back(s.id);
    for (const auto& s : set_b.solutions) m.ids_b.push_back(s.id);
    m.entries.resize(m.rows() * m.cols());

    const std::size_t cols = m.cols();
    parallel_for(m.entries.size(), jobs, [&](std::size_t p) {
        const std::size_t r = p / cols, c = p % cols;
        const Solution& a = set_a.solutions[r].solution;
        const Solution& b = set_b.solutions[c].solution;
        DuelOutcome out =
            set_a.side == Side::Red ? domain.evaluate(a, b) : domain.evaluate(b, a);
        out.eval_key = p;
        DuelRecord& rec = m.entries[p];
        rec.fitness_a = Fitness{out.fitness_of(set_a.side), domain.solution_size(a)};
        rec.fitness_b = Fitness{out.fitness_of(set_b.side), domain.solution_size(b)};
        rec.behavior_a = describe(out, set_a.side, config.descriptor, external);
        rec.behavior_b = describe(out, set_b.side, config.descriptor, external);
        rec.actions_a = out.trace_of(set_a.side).action_counts;
        rec.actions_b = out.trace_of(set_b.side).action_counts;
        rec.winner = out.winner;
    });
    return m;
}

// --- ELO -------------------------------------------------------------------------

double EloTable::rating_of(std::uint64_t id, Side side) const {
    for (const auto& e : entries)
        if (e.solution_id == id && e.side == side) return e.rating;
    throw std::out_of_range("no ELO entry for solution " + std::to_string(id));
}

EloTable elo(const TournamentMatrix& matrix, const EloConfig& config) {
    std::vector<const TournamentMatrix*> ms{&matrix};
    return elo_multi(ms, config);
}

EloTable elo_multi(const std::vector<const TournamentMatrix*>& matrices,
                   const EloConfig& config) {
    struct Key {
        Side side;
        std::uint64_t id;
        bool operator<(const Key& o) const {
            return side != o.side ? side < o.side : id < o.id;
        }
    };
    std::map<Key, std::size_t> index;
    EloTable table;
    auto player = [&](Side side, std::uint64_t id) {
        const auto [it, inserted] = index.emplace(Key{side, id}, table.entries.size());
        if (inserted)
            table.entries.push_back(EloEntry{id, side, config.initial, 0});
        return it->second;
    };

    struct Match {
        std::size_t a, b;
        double score_a;  // 1 win, 0.5 draw, 0 loss
    };
    std::vector<Match> matches;
    for (const TournamentMatrix* m : matrices) {
        for (std::size_t r = 0; r < m->rows(); ++r) {
            for (std::size_t c = 0; c < m->cols(); ++c) {
                const DuelRecord& rec = m->at(r, c);
                const std::size_t a = player(m->side_a, m->ids_a[r]);
                const std::size_t b = player(opposite(m->side_a), m->ids_b[c]);
                double score = 0.5;
                if (rec.fitness_a.primary > rec.fitness_b.primary) score = 1.0;
                else if (rec.fitness_a.primary < rec.fitness_b.primary) score = 0.0;
                matches.push_back(Match{a, b, score});
            }
        }
    }

    Rng rng(derive_seed(config.seed, {0xE10ULL}));
    for (std::uint32_t e = 0; e < config.epochs; ++e) {
        std::vector<std::size_t> order(matches.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        rng.shuffle(order);
        for (std::size_t i : order) {
            const Match& m = matches[i];
            EloEntry& a = table.entries[m.a];
            EloEntry& b = table.entries[m.b];
            const double expected_a = 1.0 / (1.0 + std::pow(10.0, (b.rating - a.rating) / 400.0));
            const double delta = config.k_factor * (m.score_a - expected_a);
            a.rating += delta;
            b.rating -= delta;
            if (e == 0) {
                ++a.matches;
                ++b.matches;
            }
        }
    }
    return table;
}

// --- PCA -------------------------------------------------------------------------

std::pair<double, double> PcaProjection::project(const std::vector<double>& v) const {
    double x = 0.0, y = 0.0;
    for (std::size_t i = 0; i < mean.size(); ++i) {
        const double c = v[i] - mean[i];
        x += c * component1[i];
        y += c * component2[i];
    }
    return {x, y};
}

namespace {

// One power-iteration eigenpair of (1/n) X^T X for row-centered data X.
// Returns the eigenvalue; v is normalized.
double power_iterate(const std::vector<std::vector<double>>& rows, std::vector<double>& v,
                     const std::vector<double>* orthogonal_to, Rng& rng) {
    const std::size_t dim = v.size();
    const std::size_t n = rows.size();
    for (auto& x : v) x = rng.uniform() - 0.5;

    auto orthogonalize = [&]() {
        if (!orthogonal_to) return;
        double dot = 0.0;
        for (std::size_t i = 0; i < dim; ++i) dot += v[i] * (*orthogonal_to)[i];
        for (std::size_t i = 0; i < dim; ++i) v[i] -= dot * (*orthogonal_to)[i];
    };
    auto normalize = [&]() {
        double sq = 0.0;
        for (double x : v) sq += x * x;
        const double norm = std::sqrt(sq);
        if (norm == 0.0) return false;
        for (double& x : v) x /= norm;
        return true;
    };

    orthogonalize();
    if (!normalize()) return 0.0;

    double lambda = 0.0;
    std::vector<double> next(dim);
    for (int iter = 0; iter < 1000; ++iter) {
        // next = X^T (X v) / n
        std::fill(next.begin(), next.end(), 0.0);
        for (const auto& row : rows) {
            double proj = 0.0;
            for (std::size_t i = 0; i < dim; ++i) proj += row[i] * v[i];
            for (std::size_t i = 0; i < dim; ++i) next[i] += proj * row[i];
        }
        for (double& x : next) x /= static_cast<double>(n);

        if (orthogonal_to) {
            double dot = 0.0;
            for (std::size_t i = 0; i < dim; ++i) dot += next[i] * (*orthogonal_to)[i];
            for (std::size_t i = 0; i < dim; ++i) next[i] -= dot * (*orthogonal_to)[i];
        }

        double sq = 0.0;
        for (double x : next) sq += x * x;
        const double norm = std::sqrt(sq);
        if (norm == 0.0) return 0.0;

        double diff = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            const double nv = next[i] / norm;
            diff = std::max(diff, std::abs(nv - v[i]));
            v[i] = nv;
        }
        lambda = norm;
        if (diff < 1e-10) break;
    }
    return lambda;
}

} // namespace

PcaProjection pca2(const std::vector<BehaviorVector>& behaviors, std::uint64_t seed) {
    if (behaviors.size() < 3)
        throw std::invalid_argument("pca2 needs at least 3 behaviors");
    const std::size_t dim = behaviors.front().dim();
    const std::size_t n = behaviors.size();
    for (const auto& b : behaviors)
        if (b.dim() != dim) throw std::invalid_argument("pca2: mixed dimensions");

    PcaProjection p;
    p.mean.assign(dim, 0.0);
    for (const auto& b : behaviors)
        for (std::size_t i = 0; i < dim; ++i) p.mean[i] += b.values[i];
    for (double& m : p.mean) m /= static_cast<double>(n);

    std::vector<std::vector<double>> rows(n, std::vector<double>(dim));
    double total_variance = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t i = 0; i < dim; ++i) {
            rows[r][i] = behaviors[r].values[i] - p.mean[i];
            total_variance += rows[r][i] * rows[r][i];
        }
    }
    total_variance /= static_cast<double>(n);

    p.component1.assign(dim, 0.0);
    p.component2.assign(dim, 0.0);
    if (total_variance == 0.0) {
        // Flag and return an arbitrary orthonormal pair.
        p.degenerate = true;
        p.component1[0] = 1.0;
        p.component2[dim > 1 ? 1 : 0] = dim > 1 ? 1.0 : 0.0;
        p.xs.assign(n, 0.0);
        p.ys.assign(n, 0.0);
        return p;
    }

    Rng rng(derive_seed(seed, {0x9CA2ULL}));
    const double lambda1 = power_iterate(rows, p.component1, nullptr, rng);

    // Deflate: remove the first component from every row.
    for (auto& row : rows) {
        double proj = 0.0;
        for (std::size_t i = 0; i < dim; ++i) proj += row[i] * p.component1[i];
        for (std::size_t i = 0; i < dim; ++i) row[i] -= proj * p.component1[i];
    }
    const double lambda2 = power_iterate(rows, p.component2, &p.component1, rng);

    p.explained1 = lambda1 / total_variance;
    p.explained2 = lambda2 / total_variance;

    p.xs.resize(n);
    p.ys.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
        auto [x, y] = p.project(behaviors[r].values);
        p.xs[r] = x;
        p.ys[r] = y;
    }
    return p;
}

// --- Coverage / QD-score -----------------------------------------------------------

GridBounds bounding_box(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.empty()) throw std::invalid_argument("bounding_box: empty input");
    GridBounds b{xs[0], xs[0], ys[0], ys[0]};
    for (std::size_t i = 1; i < xs.size(); ++i) {
        b.min_x = std::min(b.min_x, xs[i]);
        b.max_x = std::max(b.max_x, xs[i]);
        b.min_y = std::min(b.min_y, ys[i]);
        b.max_y = std::max(b.max_y, ys[i]);
    }
    return b;
}

CoverageResult coverage_qdscore(const std::vector<double>& xs, const std::vector<double>& ys,
                                const std::vector<double>& fitnesses, std::size_t grid_n) {
    return coverage_qdscore(xs, ys, fitnesses, grid_n, bounding_box(xs, ys));
}

CoverageResult coverage_qdscore(const std::vector<double>& xs, const std::vector<double>& ys,
                                const std::vector<double>& fitnesses, std::size_t grid_n,
                                const GridBounds& bounds) {
    if (xs.empty() || xs.size() != ys.size() || xs.size() != fitnesses.size())
        throw std::invalid_argument("coverage_qdscore: misaligned inputs");
    if (grid_n == 0) throw std::invalid_argument("coverage_qdscore: grid_n must be positive");

    const double wx = bounds.max_x - bounds.min_x;
    const double wy = bounds.max_y - bounds.min_y;
    auto bin = [&](double v, double lo, double w) {
        if (w <= 0.0) return std::size_t{0};
        const double t = (v - lo) / w * static_cast<double>(grid_n);
        const auto i = static_cast<std::ptrdiff_t>(t);
        return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(
            i, 0, static_cast<std::ptrdiff_t>(grid_n) - 1));
    };

    // Ordered map: the qd-score sum is accumulated in bin order, so the
    // result is exactly permutation-invariant in the inputs.
    std::map<std::size_t, double> best;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const std::size_t b = bin(xs[i], bounds.min_x, wx) * grid_n + bin(ys[i], bounds.min_y, wy);
        const auto it = best.find(b);
        if (it == best.end() || fitnesses[i] > it->second) best[b] = fitnesses[i];
    }

    CoverageResult res;
    res.occupied_bins = best.size();
    res.coverage = static_cast<double>(best.size()) / static_cast<double>(grid_n * grid_n);
    double sum = 0.0;
    for (const auto& [b, f] : best) sum += f;
    res.qd_score = best.empty() ? 0.0 : sum / static_cast<double>(best.size());
    return res;
}

// --- Ranking novelty ---------------------------------------------------------------

RankingVector ranking_vector(const std::vector<double>& fitness_per_opponent) {
    RankingVector order(fitness_per_opponent.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (fitness_per_opponent[a] != fitness_per_opponent[b])
            return fitness_per_opponent[a] > fitness_per_opponent[b];
        return a < b;
    });
    return order;
}

std::vector<double> ranking_novelty(
    const std::vector<std::vector<RankingVector>>& per_generation) {
    std::vector<double> out;
    out.reserve(per_generation.size());
    std::size_t ref_dim = 0;
    for (std::size_t g = 0; g < per_generation.size(); ++g) {
        if (per_generation[g].empty())
            throw std::invalid_argument("ranking_novelty: empty generation");
        if (g == 0) ref_dim = per_generation[0].front().size();
        for (const auto& rv : per_generation[g])
            if (rv.size() != ref_dim)
                throw std::invalid_argument("ranking_novelty: mismatched reference sets");
        if (g == 0) {
            out.push_back(1.0);
            continue;
        }
        std::set<RankingVector> previous(per_generation[g - 1].begin(),
                                         per_generation[g - 1].end());
        std::size_t fresh = 0;
        for (const auto& rv : per_generation[g])
            if (!previous.count(rv)) ++fresh;
        out.push_back(static_cast<double>(fresh) /
                      static_cast<double>(per_generation[g].size()));
    }
    return out;
}

// --- Scalar statistics ---------------------------------------------------------------

namespace {

std::vector<double> average_ranks(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

} // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("spearman: needs equal lengths >= 2");
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = rx[i] - mx, dy = ry[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw std::invalid_argument("spearman: zero rank variance");
    return sxy / std::sqrt(sxx * syy);
}

double action_entropy(const std::array<std::uint32_t, kActionKinds>& counts) {
    std::vector<std::uint64_t> c(counts.begin(), counts.end());
    return action_entropy(c);
}

double action_entropy(const std::vector<std::uint64_t>& counts) {
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    if (total == 0) return 0.0;
    double h = 0.0;
    for (auto c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h;
}

// --- Lineage ------------------------------------------------------------------------

std::vector<LineageStep> lineage_chain(const GenerationsLog& log, std::uint64_t solution_id) {
    std::unordered_map<std::uint64_t, const LineageRecord*> by_id;
    by_id.reserve(log.lineage.size());
    for (const auto& r : log.lineage) by_id.emplace(r.solution_id, &r);

    std::vector<LineageStep> chain;
    std::uint64_t cur = solution_id;
    while (true) {
        const auto it = by_id.find(cur);
        if (it == by_id.end())
            throw std::out_of_range("unknown solution id " + std::to_string(cur));
        const LineageRecord* rec = it->second;
        LineageStep step{rec, rec->parent_ids.size() > 1 ? rec->parent_ids[1] : 0};
        chain.push_back(step);
        if (rec->parent_ids.empty()) break;
        cur = rec->parent_ids.front();
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

} // namespace game
