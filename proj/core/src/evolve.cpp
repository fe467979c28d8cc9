#include "game/evolve.hpp"

#include <algorithm>
#include <stdexcept>

#include "game/parallel.hpp"

namespace game {

std::string to_string(ArchiveMode mode) {
    return mode == ArchiveMode::Growing ? "growing" : "fixed_cvt";
}

ArchiveMode archive_mode_from_string(const std::string& name) {
    if (name == "growing") return ArchiveMode::Growing;
    if (name == "fixed_cvt") return ArchiveMode::FixedCvt;
    throw std::invalid_argument("unknown archive mode: " + name);
}

void GameConfig::validate() const {
    if (n_gen == 0 || n_task == 0 || n_cell == 0)
        throw std::invalid_argument("n_gen, n_task and n_cell must be positive");
    if (batch_size == 0) throw std::invalid_argument("batch_size must be positive");
    if (cvt_samples_per_cell == 0)
        throw std::invalid_argument("cvt_samples_per_cell must be positive");
    if (descriptor.kind == DescriptorKind::FrameEmbedding &&
        (descriptor.pool_size == 0 || descriptor.num_frames == 0))
        throw std::invalid_argument("frame embedding descriptor needs pool_size and num_frames");
    if (descriptor.kind == DescriptorKind::Positions && descriptor.num_timesteps == 0)
        throw std::invalid_argument("positions descriptor needs num_timesteps");
    if (diversity_only && fitness_mode == FitnessMode::Lexicographic)
        throw std::invalid_argument("diversity_only is incompatible with lexicographic fitness");
}

std::uint64_t eval_key_inner(std::uint32_t generation, std::uint32_t iteration) {
    return (static_cast<std::uint64_t>(generation) << 32) | iteration;
}

std::uint64_t eval_key_tournament(std::uint32_t generation, std::uint32_t pair_index) {
    return (static_cast<std::uint64_t>(generation) << 32) | (1ULL << 31) | pair_index;
}

Side generation_side(const GameConfig& config, std::uint32_t g) {
    return g % 2 == 1 ? config.first_side : opposite(config.first_side);
}

namespace {

DuelOutcome evaluate_pair(const Domain& domain, Side candidate_side,
                          const Solution& candidate, const Solution& task) {
    return candidate_side == Side::Red ? domain.evaluate(candidate, task)
                                       : domain.evaluate(task, candidate);
}

std::vector<const Elite*> flatten_elites(const std::vector<TaskArchive>& archives) {
    std::vector<const Elite*> flat;
    for (const TaskArchive& a : archives) {
        auto es = archive_elites(a);
        flat.insert(flat.end(), es.begin(), es.end());
    }
    return flat;
}

// Builds the shared fixed-CVT centroids from seeded random duels.
std::vector<BehaviorVector> init_cvt_centroids(const GameConfig& config,
                                               const Domain& domain,
                                               const EmbeddingTable* external,
                                               std::uint64_t* eval_count) {
    const std::size_t samples = config.cvt_samples_per_cell * config.n_cell;
    std::vector<BehaviorVector> behaviors;
    behaviors.reserve(2 * samples);
    for (std::size_t k = 0; k < samples; ++k) {
        Rng rng = derive_rng(config.master_seed, {stream::kCvtInit, k});
        const Solution red = domain.random_solution(Side::Red, rng);
        const Solution blue = domain.random_solution(Side::Blue, rng);
        DuelOutcome out = domain.evaluate(red, blue);
        out.eval_key = k;
        behaviors.push_back(describe(out, Side::Red, config.descriptor, external));
        behaviors.push_back(describe(out, Side::Blue, config.descriptor, external));
    }
    if (eval_count) *eval_count += samples;
    return cvt_centroids_from_samples(
        behaviors, config.n_cell,
        derive_seed(config.master_seed, {stream::kCvtInit, 0xC3F7ULL}));
}

TaskArchive make_archive(const GameConfig& config,
                         const std::vector<BehaviorVector>& cvt_centroids) {
    if (config.archive_mode == ArchiveMode::Growing)
        return GrowingArchive(config.n_cell, config.descriptor.distance_kind(),
                              config.fitness_mode);
    return FixedCvtArchive(cvt_centroids, config.fitness_mode);
}

} // namespace

std::vector<TaskArchive> run_mtmb(const TaskSet& tasks, Side side,
                                  const BootstrapSet& bootstrap, const GameConfig& config,
                                  const Domain& domain, std::uint32_t generation,
                                  std::uint64_t& id_counter,
                                  std::vector<LineageRecord>& lineage,
                                  std::unordered_map<std::uint64_t, Solution>& solutions,
                                  const std::vector<BehaviorVector>& cvt_centroids,
                                  const EmbeddingTable* external, std::size_t jobs) {
    if (tasks.solutions.size() != config.n_task)
        throw std::invalid_argument("task set size does not match n_task");

    std::vector<TaskArchive> archives;
    archives.reserve(config.n_task);
    for (std::uint32_t t = 0; t < config.n_task; ++t)
        archives.push_back(make_archive(config, cvt_centroids));

    for (const BootstrapRecord& r : bootstrap.records) {
        if (r.task_index >= archives.size())
            throw std::invalid_argument("bootstrap record task index out of range");
        const Fitness f = config.diversity_only ? Fitness{0.0, r.fitness.size} : r.fitness;
        archive_update(archives[r.task_index], r.solution_id, f, r.behavior);
        solutions.emplace(r.solution_id, r.solution);
    }

    struct Candidate {
        std::uint32_t iteration = 0;
        std::size_t task_idx = 0;
        std::uint64_t id = 0;
        Solution solution;
        Fitness fitness;
        BehaviorVector behavior;
    };

    Rng gen_rng = derive_rng(config.master_seed, {stream::kGeneration, generation});

    std::uint32_t i = 0;
    while (i < config.n_budget) {
        const std::uint32_t batch_n =
            std::min(config.batch_size, config.n_budget - i);

        // Candidate generation is sequential against the archive state at
        // batch start; evaluation below is the parallel part.
        const std::vector<const Elite*> flat = flatten_elites(archives);
        const bool random_phase = flat.size() < config.n_init;
        std::vector<Candidate> batch(batch_n);
        for (std::uint32_t b = 0; b < batch_n; ++b) {
            Candidate& c = batch[b];
            c.iteration = i + b;
            c.task_idx = static_cast<std::size_t>(gen_rng.uniform_index(config.n_task));
            c.id = ++id_counter;
            Rng eval_rng = derive_rng(config.master_seed,
                                      {stream::kEvaluation, generation, c.iteration});
            LineageRecord rec;
            rec.solution_id = c.id;
            rec.generation = generation;
            if (random_phase) {
                c.solution = domain.random_solution(side, eval_rng);
                rec.op = OpTag::Random;
            } else {
                const Elite* p1 = flat[gen_rng.uniform_index(flat.size())];
                const Elite* p2 = flat[gen_rng.uniform_index(flat.size())];
                OpTag tag = OpTag::Mutation;
                c.solution = domain.vary(solutions.at(p1->solution_id),
                                         solutions.at(p2->solution_id), eval_rng, tag);
                rec.op = tag;
                rec.parent_ids.push_back(p1->solution_id);
                if (tag == OpTag::Crossover) rec.parent_ids.push_back(p2->solution_id);
            }
            rec.payload = domain.encode(c.solution);
            lineage.push_back(std::move(rec));
            solutions.emplace(c.id, c.solution);
        }

        parallel_for(batch_n, jobs, [&](std::size_t b) {
            Candidate& c = batch[b];
            DuelOutcome out = evaluate_pair(domain, side, c.solution,
                                            tasks.solutions[c.task_idx].solution);
            out.eval_key = eval_key_inner(generation, c.iteration);
            c.behavior = describe(out, side, config.descriptor, external);
            const double primary = config.diversity_only ? 0.0 : out.fitness_of(side);
            c.fitness = Fitness{primary, domain.solution_size(c.solution)};
        });

        for (const Candidate& c : batch)
            archive_update(archives[c.task_idx], c.id, c.fitness, c.behavior);

        i += batch_n;
    }
    return archives;
}

TaskSet select_tasks(const std::vector<TaskArchive>& archives, Side side,
                     std::uint32_t n_task, std::uint64_t seed, FitnessMode mode,
                     const std::unordered_map<std::uint64_t, Solution>& solutions) {
    const std::vector<const Elite*> flat = flatten_elites(archives);
    if (flat.empty()) throw std::runtime_error("select_tasks: no elites to select from");

    std::vector<BehaviorVector> behaviors;
    behaviors.reserve(flat.size());
    for (const Elite* e : flat) behaviors.push_back(e->behavior);
    const KmeansResult km = kmeans_behaviors(behaviors, n_task, seed);

    std::vector<std::size_t> selected;  // indices into flat
    std::vector<bool> taken(flat.size(), false);
    for (std::uint32_t c = 0; c < n_task; ++c) {
        std::ptrdiff_t best = -1;
        for (std::size_t i = 0; i < flat.size(); ++i) {
            if (km.assignments[i] != c) continue;
            if (best < 0) {
                best = static_cast<std::ptrdiff_t>(i);
                continue;
            }
            const auto ord = compare_fitness(flat[i]->fitness,
                                             flat[static_cast<std::size_t>(best)]->fitness, mode);
            if (ord == std::strong_ordering::greater ||
                (ord == std::strong_ordering::equal &&
                 flat[i]->solution_id < flat[static_cast<std::size_t>(best)]->solution_id))
                best = static_cast<std::ptrdiff_t>(i);
        }
        if (best >= 0) {
            selected.push_back(static_cast<std::size_t>(best));
            taken[static_cast<std::size_t>(best)] = true;
        }
    }

    // Cluster deficit: fill with distinct elites first, then duplicate.
    Rng fill_rng(derive_seed(seed, {0xF111ULL}));
    std::vector<std::size_t> remaining;
    for (std::size_t i = 0; i < flat.size(); ++i)
        if (!taken[i]) remaining.push_back(i);
    while (selected.size() < n_task && !remaining.empty()) {
        const std::size_t pick = fill_rng.uniform_index(remaining.size());
        selected.push_back(remaining[pick]);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    std::size_t dup = 0;
    while (selected.size() < n_task) selected.push_back(selected[dup++ % selected.size()]);

    TaskSet out;
    out.side = side;
    out.solutions.reserve(n_task);
    for (std::size_t idx : selected) {
        const Elite* e = flat[idx];
        out.solutions.push_back(TaskSolution{e->solution_id, solutions.at(e->solution_id)});
    }
    return out;
}

std::pair<TournamentMatrix, BootstrapSet> bootstrap_tournament(
    const TaskSet& new_tasks, const TaskSet& old_tasks, const GameConfig& config,
    const Domain& domain, std::uint32_t generation, const EmbeddingTable* external,
    std::size_t jobs) {
    if (new_tasks.side == old_tasks.side)
        throw std::invalid_argument("bootstrap tournament requires opposite sides");

    TournamentMatrix m;
    m.side_a = new_tasks.side;
    for (const auto& s : new_tasks.solutions) m.ids_a.push_back(s.id);
    for (const auto& s : old_tasks.solutions) m.ids_b.push_back(s.id);
    m.entries.resize(m.rows() * m.cols());

    const std::size_t cols = m.cols();
    parallel_for(m.entries.size(), jobs, [&](std::size_t p) {
        const std::size_t r = p / cols, c = p % cols;
        const Solution& a = new_tasks.solutions[r].solution;
        const Solution& b = old_tasks.solutions[c].solution;
        DuelOutcome out = new_tasks.side == Side::Red ? domain.evaluate(a, b)
                                                      : domain.evaluate(b, a);
        out.eval_key = eval_key_tournament(generation, static_cast<std::uint32_t>(p));
        DuelRecord& rec = m.entries[p];
        rec.fitness_a = Fitness{out.fitness_of(new_tasks.side), domain.solution_size(a)};
        rec.fitness_b = Fitness{out.fitness_of(old_tasks.side), domain.solution_size(b)};
        rec.behavior_a = describe(out, new_tasks.side, config.descriptor, external);
        rec.behavior_b = describe(out, old_tasks.side, config.descriptor, external);
        rec.actions_a = out.trace_of(new_tasks.side).action_counts;
        rec.actions_b = out.trace_of(old_tasks.side).action_counts;
        rec.winner = out.winner;
    });

    BootstrapSet bs;
    if (config.bootstrap_enabled) {
        bs.records.reserve(m.entries.size());
        for (std::size_t r = 0; r < m.rows(); ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
                const DuelRecord& rec = m.at(r, c);
                bs.records.push_back(BootstrapRecord{
                    r, old_tasks.solutions[c].id, old_tasks.solutions[c].solution,
                    rec.fitness_b, rec.behavior_b});
            }
        }
    }
    return {std::move(m), std::move(bs)};
}

BootstrapSet bootstrap_from_record(const GenerationRecord& record, const GameConfig& config,
                                   const Domain&) {
    BootstrapSet bs;
    if (!config.bootstrap_enabled) return bs;
    const TournamentMatrix& m = record.bootstrap_matrix;
    bs.records.reserve(m.entries.size());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const DuelRecord& rec = m.at(r, c);
            bs.records.push_back(BootstrapRecord{r, record.tasks_used.solutions[c].id,
                                                 record.tasks_used.solutions[c].solution,
                                                 rec.fitness_b, rec.behavior_b});
        }
    }
    return bs;
}

namespace {

struct EngineCtx {
    std::unordered_map<std::uint64_t, Solution> solutions;
    std::vector<BehaviorVector> cvt_centroids;
    EmbeddingTable external_table;
    bool has_external = false;
};

const EmbeddingTable* external_ptr(const EngineCtx& ctx) {
    return ctx.has_external ? &ctx.external_table : nullptr;
}

void load_external_if_needed(EngineCtx& ctx, const GameConfig& config) {
    if (config.descriptor.kind != DescriptorKind::External) return;
    ctx.external_table = read_external_embeddings(config.descriptor.external_path);
    ctx.has_external = true;
}

void run_generation_loop(GenerationsLog& log, TaskSet& tasks, BootstrapSet& bootstrap,
                         const Domain& domain, EngineCtx& ctx, std::size_t jobs,
                         const RunHooks& hooks, std::uint32_t stop_after) {
    const GameConfig& config = log.config;
    const std::uint32_t last =
        stop_after > 0 ? std::min(stop_after, config.n_gen) : config.n_gen;
    for (std::uint32_t g = static_cast<std::uint32_t>(log.generations.size()) + 1;
         g <= last; ++g) {
        const Side side = generation_side(config, g);
        if (hooks.progress)
            hooks.progress("generation " + std::to_string(g) + "/" +
                           std::to_string(config.n_gen) + " side=" + side_name(side));

        std::vector<TaskArchive> archives =
            run_mtmb(tasks, side, bootstrap, config, domain, g, log.id_counter,
                     log.lineage, ctx.solutions, ctx.cvt_centroids, external_ptr(ctx), jobs);

        TaskSet new_tasks = select_tasks(
            archives, side, config.n_task,
            derive_seed(config.master_seed, {stream::kTaskSelect, g}), config.fitness_mode,
            ctx.solutions);

        auto [matrix, next_bootstrap] = bootstrap_tournament(
            new_tasks, tasks, config, domain, g, external_ptr(ctx), jobs);

        GenerationRecord rec;
        rec.index = g;
        rec.side = side;
        rec.tasks_used = tasks;
        rec.tasks_selected = new_tasks;
        rec.archives = std::move(archives);
        rec.bootstrap_matrix = std::move(matrix);
        rec.evaluations = static_cast<std::uint64_t>(config.n_budget) +
                          static_cast<std::uint64_t>(config.n_task) * config.n_task;
        log.generations.push_back(std::move(rec));
        if (hooks.on_generation) hooks.on_generation(log, log.generations.back());

        tasks = std::move(new_tasks);
        bootstrap = std::move(next_bootstrap);

        // Only the current tasks and bootstrap records are live references
        // into the solution map from here on; drop the rest (payload text
        // stays in the lineage log).
        std::unordered_map<std::uint64_t, Solution> kept;
        for (const auto& t : tasks.solutions) kept.emplace(t.id, t.solution);
        for (const auto& r : bootstrap.records) kept.emplace(r.solution_id, r.solution);
        ctx.solutions = std::move(kept);
    }
}

} // namespace

GenerationsLog run_game(const GameConfig& config, const Domain& domain, std::size_t jobs,
                        const RunHooks& hooks, std::uint32_t stop_after) {
    config.validate();
    GenerationsLog log;
    log.config = config;
    log.domain_name = domain.name();

    EngineCtx ctx;
    load_external_if_needed(ctx, config);
    if (config.archive_mode == ArchiveMode::FixedCvt)
        ctx.cvt_centroids =
            init_cvt_centroids(config, domain, external_ptr(ctx), &log.init_evaluations);

    // Initial tasks: n_task random solutions for the non-evolving side.
    Rng init_rng = derive_rng(config.master_seed, {stream::kInitialTasks});
    log.initial_tasks.side = opposite(config.first_side);
    for (std::uint32_t t = 0; t < config.n_task; ++t) {
        Solution s = domain.random_solution(log.initial_tasks.side, init_rng);
        const std::uint64_t id = ++log.id_counter;
        log.lineage.push_back(LineageRecord{id, {}, 0, OpTag::Random, domain.encode(s)});
        ctx.solutions.emplace(id, s);
        log.initial_tasks.solutions.push_back(TaskSolution{id, std::move(s)});
    }

    TaskSet tasks = log.initial_tasks;
    BootstrapSet bootstrap;
    run_generation_loop(log, tasks, bootstrap, domain, ctx, jobs, hooks, stop_after);
    return log;
}

void continue_game(GenerationsLog& log, TaskSet tasks, BootstrapSet bootstrap,
                   const Domain& domain, std::size_t jobs, const RunHooks& hooks,
                   std::uint32_t stop_after) {
    log.config.validate();
    EngineCtx ctx;
    load_external_if_needed(ctx, log.config);
    if (log.config.archive_mode == ArchiveMode::FixedCvt)
        ctx.cvt_centroids =
            init_cvt_centroids(log.config, domain, external_ptr(ctx), nullptr);

    for (const auto& t : tasks.solutions) ctx.solutions.emplace(t.id, t.solution);
    for (const auto& r : bootstrap.records) ctx.solutions.emplace(r.solution_id, r.solution);

    run_generation_loop(log, tasks, bootstrap, domain, ctx, jobs, hooks, stop_after);
}

} // namespace game
