#include "game/run_analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace game {

namespace {

// (pool, labels) of one side: evolved generations' task sets, or the initial
// tasks when the side never evolved.
std::pair<TaskSet, std::vector<PoolLabel>> side_pool(const LoadedRun& run, Side side) {
    TaskSet pool;
    pool.side = side;
    std::vector<PoolLabel> labels;
    for (const GenerationRecord& rec : run.log.generations) {
        if (rec.side != side) continue;
        for (std::uint32_t t = 0; t < rec.tasks_selected.solutions.size(); ++t) {
            const TaskSolution& ts = rec.tasks_selected.solutions[t];
            pool.solutions.push_back(
                TaskSolution{pool.solutions.size(), ts.solution});  // synthetic id
            labels.push_back(PoolLabel{rec.index, t, ts.id, run.manifest.run_id});
        }
    }
    if (pool.solutions.empty()) {
        const TaskSet& init = run.log.initial_tasks;
        if (init.side != side)
            throw std::runtime_error("run has no task pool for side " +
                                     std::string(side_name(side)));
        for (std::uint32_t t = 0; t < init.solutions.size(); ++t) {
            pool.solutions.push_back(TaskSolution{pool.solutions.size(),
                                                  init.solutions[t].solution});
            labels.push_back(PoolLabel{0, t, init.solutions[t].id, run.manifest.run_id});
        }
    }
    return {std::move(pool), std::move(labels)};
}

} // namespace

RunTournament intergen_tournament(const LoadedRun& run, std::size_t jobs,
                                  std::optional<std::uint64_t> duel_seed_override,
                                  const EmbeddingTable* external) {
    auto domain = make_domain(run.manifest);
    if (duel_seed_override) domain = domain->with_duel_seed(*duel_seed_override);

    auto [red, labels_red] = side_pool(run, Side::Red);
    auto [blue, labels_blue] = side_pool(run, Side::Blue);

    RunTournament t;
    t.run_id = run.manifest.run_id;
    t.matrix = round_robin(red, blue, run.manifest.config, *domain, external, jobs);
    t.labels_red = std::move(labels_red);
    t.labels_blue = std::move(labels_blue);
    return t;
}

std::vector<SelectedElite> top_k_side(const LoadedRun& run, Side side, std::size_t k) {
    // Archives of the side's last evolved generation.
    const GenerationRecord* last = nullptr;
    for (const GenerationRecord& rec : run.log.generations)
        if (rec.side == side) last = &rec;
    if (last == nullptr)
        throw std::runtime_error("run never evolved side " + std::string(side_name(side)));

    std::vector<const Elite*> elites;
    for (const TaskArchive& a : last->archives) {
        const auto es = archive_elites(a);
        elites.insert(elites.end(), es.begin(), es.end());
    }
    std::sort(elites.begin(), elites.end(), [&](const Elite* a, const Elite* b) {
        const auto ord = compare_fitness(a->fitness, b->fitness, run.manifest.config.fitness_mode);
        if (ord != std::strong_ordering::equal) return ord == std::strong_ordering::greater;
        return a->solution_id < b->solution_id;
    });
    // A solution can be elite in several task archives; keep distinct ids.
    std::vector<SelectedElite> out;
    for (const Elite* e : elites) {
        if (out.size() >= k) break;
        bool seen = false;
        for (const auto& s : out) seen = seen || s.solution_id == e->solution_id;
        if (seen) continue;
        out.push_back(SelectedElite{e->solution_id, e->fitness,
                                    run.payloads.at(e->solution_id)});
    }
    return out;
}

TopkTournament topk_tournament(const std::vector<const LoadedRun*>& runs, std::size_t k,
                               std::size_t jobs,
                               std::optional<std::uint64_t> duel_seed_override) {
    if (runs.empty()) throw std::invalid_argument("topk_tournament: no runs");
    for (const LoadedRun* r : runs)
        if (r->manifest.domain_kind != runs.front()->manifest.domain_kind)
            throw std::invalid_argument("topk_tournament: mixed domains");

    auto domain = make_domain(runs.front()->manifest);
    if (duel_seed_override) domain = domain->with_duel_seed(*duel_seed_override);

    TopkTournament t;
    TaskSet red{Side::Red, {}}, blue{Side::Blue, {}};
    for (const LoadedRun* run : runs) {
        for (const Side side : {Side::Red, Side::Blue}) {
            std::vector<SelectedElite> sel;
            try {
                sel = top_k_side(*run, side, k);
            } catch (const std::runtime_error&) {
                continue;  // one-sided run: the other side comes from its twin
            }
            if (sel.size() < k)
                std::cerr << "top-k clipped to " << sel.size() << " for "
                          << run->manifest.run_id << " " << side_name(side) << "\n";
            for (const SelectedElite& e : sel) {
                TaskSet& pool = side == Side::Red ? red : blue;
                auto& labels = side == Side::Red ? t.labels_red : t.labels_blue;
                pool.solutions.push_back(
                    TaskSolution{pool.solutions.size(), domain->decode(e.payload)});
                labels.push_back(PoolLabel{0, static_cast<std::uint32_t>(labels.size()),
                                           e.solution_id, run->manifest.run_id});
            }
        }
    }
    if (red.solutions.empty() || blue.solutions.empty())
        throw std::runtime_error("topk_tournament: one side is empty");
    t.matrix = round_robin(red, blue, runs.front()->manifest.config, *domain, nullptr, jobs);
    return t;
}

// --- Tournament file ("GTOU") -------------------------------------------------

namespace {

constexpr char kTournMagic[4] = {'G', 'T', 'O', 'U'};
constexpr std::uint32_t kTournVersion = 1;

void put_u32(std::string& b, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}
void put_u64(std::string& b, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) b.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}
void put_f64(std::string& b, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    put_u64(b, bits);
}
void put_str(std::string& b, const std::string& s) {
    put_u32(b, static_cast<std::uint32_t>(s.size()));
    b += s;
}
void put_behavior(std::string& b, const BehaviorVector& v) {
    b.push_back(static_cast<char>(v.kind));
    put_u32(b, static_cast<std::uint32_t>(v.values.size()));
    for (double x : v.values) put_f64(b, x);
}

struct Take {
    const std::string& b;
    std::size_t pos = 0;
    void need(std::size_t n) const {
        if (pos + n > b.size()) throw std::runtime_error("tournament file truncated");
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(static_cast<unsigned char>(b[pos + i])) << (8 * i);
        pos += 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[pos + i])) << (8 * i);
        pos += 8;
        return v;
    }
    double f64() {
        const std::uint64_t bits = u64();
        double v;
        std::memcpy(&v, &bits, 8);
        return v;
    }
    std::string str() {
        const auto n = u32();
        need(n);
        std::string s = b.substr(pos, n);
        pos += n;
        return s;
    }
    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(b[pos++]);
    }
    BehaviorVector behavior() {
        BehaviorVector v;
        v.kind = static_cast<DistanceKind>(u8());
        const auto n = u32();
        v.values.resize(n);
        for (auto& x : v.values) x = f64();
        return v;
    }
};

void put_labels(std::string& b, const std::vector<PoolLabel>& labels) {
    put_u32(b, static_cast<std::uint32_t>(labels.size()));
    for (const auto& l : labels) {
        put_u32(b, l.generation);
        put_u32(b, l.task_index);
        put_u64(b, l.solution_id);
        put_str(b, l.run_id);
    }
}

std::vector<PoolLabel> take_labels(Take& t) {
    const auto n = t.u32();
    std::vector<PoolLabel> labels(n);
    for (auto& l : labels) {
        l.generation = t.u32();
        l.task_index = t.u32();
        l.solution_id = t.u64();
        l.run_id = t.str();
    }
    return labels;
}

} // namespace

void save_tournament(const std::string& path, const RunTournament& t) {
    std::string b;
    b.append(kTournMagic, 4);
    put_u32(b, kTournVersion);
    put_str(b, t.run_id);
    b.push_back(static_cast<char>(t.matrix.side_a));
    put_u32(b, static_cast<std::uint32_t>(t.matrix.rows()));
    put_u32(b, static_cast<std::uint32_t>(t.matrix.cols()));
    for (auto id : t.matrix.ids_a) put_u64(b, id);
    for (auto id : t.matrix.ids_b) put_u64(b, id);
    for (const DuelRecord& e : t.matrix.entries) {
        put_f64(b, e.fitness_a.primary);
        put_u32(b, e.fitness_a.size);
        put_f64(b, e.fitness_b.primary);
        put_u32(b, e.fitness_b.size);
        put_behavior(b, e.behavior_a);
        put_behavior(b, e.behavior_b);
        for (auto c : e.actions_a) put_u32(b, c);
        for (auto c : e.actions_b) put_u32(b, c);
        b.push_back(static_cast<char>(e.winner));
    }
    put_labels(b, t.labels_red);
    put_labels(b, t.labels_blue);
    put_u64(b, fnv1a(b.data(), b.size()));
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write tournament: " + path);
    out.write(b.data(), static_cast<std::streamsize>(b.size()));
}

RunTournament load_tournament(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open tournament: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string bytes = buf.str();
    if (bytes.size() < 12 || std::memcmp(bytes.data(), kTournMagic, 4) != 0)
        throw std::runtime_error("bad tournament magic: " + path);
    std::uint64_t stored = 0;
    for (std::size_t i = 0; i < 8; ++i)
        stored |= static_cast<std::uint64_t>(
                      static_cast<unsigned char>(bytes[bytes.size() - 8 + i]))
                  << (8 * i);
    if (fnv1a(bytes.data(), bytes.size() - 8) != stored)
        throw std::runtime_error("checksum mismatch: " + path);
    bytes.resize(bytes.size() - 8);

    Take t{bytes, 4};
    const auto version = t.u32();
    if (version != kTournVersion)
        throw std::runtime_error("unsupported tournament version " + std::to_string(version));
    RunTournament r;
    r.run_id = t.str();
    r.matrix.side_a = static_cast<Side>(t.u8());
    const auto rows = t.u32();
    const auto cols = t.u32();
    r.matrix.ids_a.resize(rows);
    r.matrix.ids_b.resize(cols);
    for (auto& id : r.matrix.ids_a) id = t.u64();
    for (auto& id : r.matrix.ids_b) id = t.u64();
    r.matrix.entries.resize(static_cast<std::size_t>(rows) * cols);
    for (DuelRecord& e : r.matrix.entries) {
        e.fitness_a.primary = t.f64();
        e.fitness_a.size = t.u32();
        e.fitness_b.primary = t.f64();
        e.fitness_b.size = t.u32();
        e.behavior_a = t.behavior();
        e.behavior_b = t.behavior();
        for (auto& c : e.actions_a) c = t.u32();
        for (auto& c : e.actions_b) c = t.u32();
        e.winner = static_cast<Winner>(t.u8());
    }
    r.labels_red = take_labels(t);
    r.labels_blue = take_labels(t);
    if (t.pos != bytes.size()) throw std::runtime_error("trailing bytes in " + path);
    return r;
}

// --- Metrics ---------------------------------------------------------------------

std::vector<GenerationMetrics> compute_generation_metrics(const LoadedRun& run,
                                                          const RunTournament& tournament,
                                                          std::size_t grid_n) {
    const TournamentMatrix& m = tournament.matrix;

    // Project every tournament behavior with a PCA fitted on this run alone.
    std::vector<BehaviorVector> behaviors;
    behaviors.reserve(2 * m.entries.size());
    for (const DuelRecord& e : m.entries) {
        behaviors.push_back(e.behavior_a);
        behaviors.push_back(e.behavior_b);
    }
    const PcaProjection pca = pca2(behaviors, run.manifest.config.master_seed);
    const GridBounds bounds = bounding_box(pca.xs, pca.ys);

    // Attribute each projected point to the generation of the solution that
    // produced it (rows are red, columns blue).
    struct GenPoints {
        std::vector<double> xs, ys, fs;
    };
    std::map<std::uint32_t, GenPoints> per_gen;
    const std::size_t cols = m.cols();
    for (std::size_t p = 0; p < m.entries.size(); ++p) {
        const std::size_t r = p / cols, c = p % cols;
        const DuelRecord& e = m.entries[p];
        GenPoints& gr = per_gen[tournament.labels_red[r].generation];
        gr.xs.push_back(pca.xs[2 * p]);
        gr.ys.push_back(pca.ys[2 * p]);
        gr.fs.push_back(e.fitness_a.primary);
        GenPoints& gb = per_gen[tournament.labels_blue[c].generation];
        gb.xs.push_back(pca.xs[2 * p + 1]);
        gb.ys.push_back(pca.ys[2 * p + 1]);
        gb.fs.push_back(e.fitness_b.primary);
    }

    // Ranking novelty per side over that side's generation sequence.
    std::map<std::uint32_t, double> novelty;
    for (const Side side : {Side::Red, Side::Blue}) {
        const auto& labels = side == Side::Red ? tournament.labels_red : tournament.labels_blue;
        std::vector<std::uint32_t> gens;
        for (const auto& l : labels)
            if (gens.empty() || gens.back() != l.generation) gens.push_back(l.generation);
        std::vector<std::vector<RankingVector>> per_generation;
        for (std::uint32_t g : gens) {
            std::vector<RankingVector> vectors;
            for (std::size_t i = 0; i < labels.size(); ++i) {
                if (labels[i].generation != g) continue;
                std::vector<double> fitnesses;
                if (side == Side::Red) {
                    for (std::size_t c = 0; c < m.cols(); ++c)
                        fitnesses.push_back(m.at(i, c).fitness_a.primary);
                } else {
                    for (std::size_t r = 0; r < m.rows(); ++r)
                        fitnesses.push_back(m.at(r, i).fitness_b.primary);
                }
                vectors.push_back(ranking_vector(fitnesses));
            }
            per_generation.push_back(std::move(vectors));
        }
        if (per_generation.empty()) continue;
        const auto nov = ranking_novelty(per_generation);
        for (std::size_t i = 0; i < gens.size(); ++i) novelty[gens[i]] = nov[i];
    }

    std::vector<GenerationMetrics> out;
    for (const GenerationRecord& rec : run.log.generations) {
        GenerationMetrics gm;
        gm.generation = rec.index;

        const auto it = per_gen.find(rec.index);
        if (it != per_gen.end()) {
            const CoverageResult cov =
                coverage_qdscore(it->second.xs, it->second.ys, it->second.fs, grid_n, bounds);
            gm.coverage = cov.coverage;
            gm.qd_score = cov.qd_score;
        }

        // Entropy of the selected tasks' pooled action distribution, from the
        // stored bootstrap matrix (rows are this generation's new tasks).
        std::vector<std::uint64_t> counts(kActionKinds, 0);
        for (const DuelRecord& e : rec.bootstrap_matrix.entries)
            for (std::size_t k = 0; k < kActionKinds; ++k) counts[k] += e.actions_a[k];
        gm.entropy = action_entropy(counts);

        const auto nit = novelty.find(rec.index);
        gm.ranking_novelty = nit != novelty.end() ? nit->second : 0.0;

        std::size_t elites = 0;
        double size_sum = 0.0;
        for (const TaskArchive& a : rec.archives)
            for (const Elite* e : archive_elites(a)) {
                ++elites;
                size_sum += e->fitness.size;
            }
        gm.solution_size_mean = elites ? size_sum / static_cast<double>(elites) : 0.0;
        out.push_back(gm);
    }
    return out;
}

PooledProjection pooled_projection(const std::vector<const RunTournament*>& tournaments,
                                   std::size_t grid_n, std::uint64_t seed) {
    if (tournaments.empty()) throw std::invalid_argument("pooled_projection: no tournaments");

    std::vector<BehaviorVector> all;
    for (const RunTournament* t : tournaments) {
        for (const DuelRecord& e : t->matrix.entries) {
            all.push_back(e.behavior_a);
            all.push_back(e.behavior_b);
        }
    }
    PooledProjection pool;
    pool.pca = pca2(all, seed);
    pool.bounds = bounding_box(pool.pca.xs, pool.pca.ys);

    std::size_t cursor = 0;
    char key[128];
    for (const RunTournament* t : tournaments) {
        ProjectedRun pr;
        pr.run_id = t->run_id;
        const std::size_t cols = t->matrix.cols();
        for (std::size_t p = 0; p < t->matrix.entries.size(); ++p) {
            const std::size_t r = p / cols, c = p % cols;
            const DuelRecord& e = t->matrix.entries[p];
            const PoolLabel& la = t->labels_red[r];
            const PoolLabel& lb = t->labels_blue[c];
            std::snprintf(key, sizeof(key), "g%u.t%u_vs_g%u.t%u.red", la.generation,
                          la.task_index, lb.generation, lb.task_index);
            pr.behavior_keys.emplace_back(key);
            pr.xs.push_back(pool.pca.xs[cursor]);
            pr.ys.push_back(pool.pca.ys[cursor]);
            pr.fitnesses.push_back(e.fitness_a.primary);
            ++cursor;
            std::snprintf(key, sizeof(key), "g%u.t%u_vs_g%u.t%u.blue", la.generation,
                          la.task_index, lb.generation, lb.task_index);
            pr.behavior_keys.emplace_back(key);
            pr.xs.push_back(pool.pca.xs[cursor]);
            pr.ys.push_back(pool.pca.ys[cursor]);
            pr.fitnesses.push_back(e.fitness_b.primary);
            ++cursor;
        }
        pr.score = coverage_qdscore(pr.xs, pr.ys, pr.fitnesses, grid_n, pool.bounds);
        pool.runs.push_back(std::move(pr));
    }
    return pool;
}

} // namespace game
