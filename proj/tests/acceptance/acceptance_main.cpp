// Acceptance suite: runs every release criterion end to end, one PASS/FAIL
// line per criterion, nonzero exit if any fail. Run through ctest or
// directly; the CLI binary and manifest directory come from compile-time
// paths so the suite exercises the shipped operator surface.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <vector>

#include "game/analysis.hpp"
#include "game/manifest.hpp"
#include "game/run_analysis.hpp"
#include "game/run_store.hpp"
#include "game/snapshot.hpp"
#include "reference_archive.hpp"

namespace fs = std::filesystem;
using namespace game;

namespace {

const std::string kCli = GAME_CLI_PATH;
const std::string kManifests = GAME_MANIFEST_DIR;
fs::path g_work;

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw CheckFailure(what);
}

int run_cli(const std::string& args) {
    const std::string cmd = kCli + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

void run_cli_ok(const std::string& args) {
    const int rc = run_cli(args);
    require(rc == 0, "CLI failed (exit " + std::to_string(rc) + "): " + args);
}

std::string manifest_path(const std::string& name) {
    return (fs::path(kManifests) / (name + ".json")).string();
}

// Runs a preset once per seed (cached across criteria) and returns run dirs.
std::vector<std::string> ensure_runs(const std::string& preset,
                                     const std::vector<int>& seeds) {
    std::vector<std::string> dirs;
    for (int seed : seeds) {
        const fs::path dir = g_work / (preset + "_s" + std::to_string(seed));
        if (!fs::exists(dir / "DONE")) {
            fs::remove_all(dir);
            run_cli_ok("run --manifest " + manifest_path(preset) +
                       " --set evolve.master_seed=" + std::to_string(seed) + " --out " +
                       dir.string() + " --jobs 4");
        }
        dirs.push_back(dir.string());
    }
    return dirs;
}

void ensure_tournament(const std::string& run_dir) {
    if (!fs::exists(fs::path(run_dir) / "tournament.bin"))
        run_cli_ok("tournament --run " + run_dir + " --jobs 4");
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CheckFailure("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// --- criterion 1: archive fuzz ---------------------------------------------------

void criterion_archive_fuzz() {
    struct Cfg {
        std::size_t dim;
        DistanceKind kind;
        std::size_t capacity;
    };
    const Cfg configs[] = {{2, DistanceKind::Euclidean, 5},
                           {2, DistanceKind::Euclidean, 20},
                           {320, DistanceKind::Cosine, 5},
                           {320, DistanceKind::Cosine, 20}};
    for (const Cfg& cfg : configs) {
        GrowingArchive a(cfg.capacity, cfg.kind);
        Rng rng(0xF022 + cfg.dim * 31 + cfg.capacity);
        double last_min = 0.0;
        for (int i = 0; i < 10000; ++i) {
            BehaviorVector b;
            b.kind = cfg.kind;
            b.values.resize(cfg.dim);
            for (auto& x : b.values) x = rng.uniform() * 2.0 - 1.0;
            if (cfg.kind == DistanceKind::Cosine) b.values[0] += 2.5;
            const auto r =
                a.update(static_cast<std::uint64_t>(i + 1), Fitness{rng.uniform(), 0}, b);

            require(a.size() <= cfg.capacity, "capacity exceeded");
            for (std::size_t c = 0; c < a.size(); ++c)
                require(a.cells()[c].backup.behavior == a.cells()[c].centroid,
                        "backup not anchored to centroid");
            if (r.kind == UpdateResult::GrewReplacedCell) {
                const double mn = a.min_pairwise_distance();
                require(mn > last_min, "min pairwise distance did not strictly grow");
                last_min = mn;
                for (std::size_t c = 0; c < a.size(); ++c)
                    require(a.find_cell(a.cells()[c].elite.behavior) == c,
                            "hole after growth");
            } else if (a.size() == cfg.capacity && last_min == 0.0) {
                last_min = a.min_pairwise_distance();
            }
        }
        for (std::size_t c = 0; c < a.size(); ++c)
            require(a.find_cell(a.cells()[c].elite.behavior) == c, "hole at end of fuzz");
    }
}

// --- criterion 2: oracle equivalence ---------------------------------------------

void criterion_archive_oracle() {
    for (int seq = 0; seq < 100; ++seq) {
        Rng rng(0x0AC1E + seq);
        const std::size_t capacity = 2 + rng.uniform_index(4);  // <= 5
        const int updates = 50 + static_cast<int>(rng.uniform_index(151));
        GrowingArchive a(capacity, DistanceKind::Euclidean);
        ref::RefArchive r;
        r.capacity = capacity;
        for (int i = 0; i < updates; ++i) {
            const std::vector<double> v{rng.uniform() * 4 - 2, rng.uniform() * 4 - 2};
            const double f = rng.uniform();
            a.update(static_cast<std::uint64_t>(i + 1), Fitness{f, 0},
                     BehaviorVector{v, DistanceKind::Euclidean});
            ref::ref_update(r, static_cast<std::uint64_t>(i + 1), f, v);

            require(a.size() == r.centroids.size(), "size diverged from oracle");
            for (std::size_t c = 0; c < a.size(); ++c) {
                require(a.cells()[c].centroid.values == r.centroids[c],
                        "centroid diverged from oracle");
                require(a.cells()[c].elite.solution_id == r.elites[c].id,
                        "elite id diverged from oracle");
                require(a.cells()[c].elite.fitness.primary == r.elites[c].fitness,
                        "elite fitness diverged from oracle");
                require(a.cells()[c].backup.solution_id == r.backups[c].id,
                        "backup diverged from oracle");
            }
        }
    }
}

// --- criterion 3: pusher conservation --------------------------------------------

void criterion_pusher_conservation() {
    const auto dirs = ensure_runs("pusher_desk", {1});
    const LoadedRun run = load_run(dirs[0]);
    std::size_t checked = 0;
    for (const GenerationRecord& rec : run.log.generations) {
        for (const DuelRecord& e : rec.bootstrap_matrix.entries) {
            require(e.fitness_a.primary + e.fitness_b.primary == 1.0,
                    "bootstrap duel fitness sum != 1");
            ++checked;
        }
    }
    ensure_tournament(dirs[0]);
    const RunTournament t = load_tournament(dirs[0] + "/tournament.bin");
    for (const DuelRecord& e : t.matrix.entries) {
        require(e.fitness_a.primary + e.fitness_b.primary == 1.0,
                "tournament duel fitness sum != 1");
        ++checked;
    }
    require(checked > 0, "no duels recorded");
}

// --- criterion 4: determinism ----------------------------------------------------

void criterion_determinism() {
    for (const std::string preset :
         {std::string("pusher_desk"), std::string("skirmish_desk")}) {
        const RunManifest m = load_manifest_file(manifest_path(preset));
        std::vector<std::string> dirs;
        int variant = 0;
        for (const std::string jobs : {"1", "1", "8"}) {
            const fs::path dir = g_work / (preset + "_det" + std::to_string(variant++));
            fs::remove_all(dir);
            run_cli_ok("run --manifest " + manifest_path(preset) + " --out " + dir.string() +
                       " --jobs " + jobs);
            dirs.push_back(dir.string());
        }
        for (std::uint32_t g = 1; g <= m.config.n_gen; ++g) {
            const auto h0 = fnv1a_file(snapshot_path(dirs[0], g));
            require(h0 == fnv1a_file(snapshot_path(dirs[1], g)),
                    preset + " gen " + std::to_string(g) + ": repeat run differs");
            require(h0 == fnv1a_file(snapshot_path(dirs[2], g)),
                    preset + " gen " + std::to_string(g) + ": --jobs 8 differs");
        }
    }
}

// --- criteria 5 & 6: ablation orderings ------------------------------------------

struct AblationRuns {
    std::vector<std::string> game, cvt, random, mtmb;
};

AblationRuns& ablation_runs() {
    static AblationRuns runs;
    if (runs.game.empty()) {
        const std::vector<int> seeds{1, 2, 3};
        runs.game = ensure_runs("pusher_desk", seeds);
        runs.cvt = ensure_runs("pusher_desk_cvt", seeds);
        runs.random = ensure_runs("pusher_desk_random", seeds);
        runs.mtmb = ensure_runs("pusher_one_sided_red", seeds);
        const auto blue = ensure_runs("pusher_one_sided_blue", seeds);
        runs.mtmb.insert(runs.mtmb.end(), blue.begin(), blue.end());
    }
    return runs;
}

void criterion_coverage_ordering() {
    AblationRuns& runs = ablation_runs();
    const std::vector<std::pair<std::string, const std::vector<std::string>*>> groups{
        {"game", &runs.game},
        {"cvt", &runs.cvt},
        {"random", &runs.random},
        {"mtmb", &runs.mtmb}};

    std::vector<RunTournament> tournaments;
    std::vector<std::string> group_of;  // parallel to tournaments
    for (const auto& [name, dirs] : groups) {
        for (const std::string& dir : *dirs) {
            ensure_tournament(dir);
            group_of.push_back(name);
            tournaments.push_back(load_tournament(dir + "/tournament.bin"));
        }
    }
    std::vector<const RunTournament*> ptrs;
    for (const auto& t : tournaments) ptrs.push_back(&t);
    const PooledProjection pool = pooled_projection(ptrs, 100);

    std::map<std::string, std::vector<double>> coverage;
    for (std::size_t i = 0; i < group_of.size(); ++i)
        coverage[group_of[i]].push_back(pool.runs[i].score.coverage);

    const double med_game = median(coverage["game"]);
    const double med_cvt = median(coverage["cvt"]);
    const double med_random = median(coverage["random"]);
    const double med_mtmb = median(coverage["mtmb"]);
    std::printf("    coverage medians: game=%.4f cvt=%.4f random=%.4f mtmb=%.4f"
                " (mtmb vs game reported, not gated)\n",
                med_game, med_cvt, med_random, med_mtmb);

    require(med_game >= med_cvt, "median coverage: game < cvt");
    require(med_game >= med_random, "median coverage: game < random");
}

void criterion_elo_ordering() {
    AblationRuns& runs = ablation_runs();
    std::vector<LoadedRun> loaded;
    std::vector<std::string> group_of_run;
    for (const auto& [name, dirs] :
         std::vector<std::pair<std::string, const std::vector<std::string>*>>{
             {"game", &runs.game}, {"random", &runs.random}, {"mtmb", &runs.mtmb}}) {
        for (const std::string& dir : *dirs) {
            loaded.push_back(load_run(dir));
            group_of_run.push_back(name);
        }
    }
    std::vector<const LoadedRun*> ptrs;
    for (const auto& r : loaded) ptrs.push_back(&r);
    const TopkTournament t = topk_tournament(ptrs, 10, 4);
    const EloTable table = elo(t.matrix);

    std::map<std::string, std::string> run_group;
    for (std::size_t i = 0; i < loaded.size(); ++i)
        run_group[loaded[i].manifest.run_id] = group_of_run[i];

    std::map<std::string, std::vector<double>> ratings;
    for (const EloEntry& e : table.entries) {
        const auto& labels = e.side == Side::Red ? t.labels_red : t.labels_blue;
        ratings[run_group.at(labels.at(e.solution_id).run_id)].push_back(e.rating);
    }
    const double med_game = median(ratings["game"]);
    const double med_random = median(ratings["random"]);
    const double med_mtmb = median(ratings["mtmb"]);
    std::printf("    elo medians: game=%.1f random=%.1f mtmb=%.1f\n", med_game, med_random,
                med_mtmb);

    require(med_game > med_random, "median ELO: game <= random");
    require(med_game > med_mtmb, "median ELO: game <= mtmb");
}

// --- criterion 7: variation operator frequencies ----------------------------------

void criterion_operator_frequencies() {
    Rng rng(0xB7F2E9);
    std::array<std::size_t, 5> counts{};
    const int n = 100000;
    for (int i = 0; i < n; ++i) ++counts[static_cast<std::size_t>(draw_bt_operator(rng))];
    const double expected[] = {0.35, 0.21, 0.07, 0.07, 0.30};
    for (std::size_t op = 0; op < 5; ++op) {
        const double freq = static_cast<double>(counts[op]) / n;
        require(std::abs(freq - expected[op]) < 0.01,
                "operator " + std::to_string(op) + " frequency " + std::to_string(freq) +
                    " outside +/-1% of " + std::to_string(expected[op]));
    }
}

// --- criterion 8: seed robustness -------------------------------------------------

void criterion_seed_robustness() {
    const auto dirs = ensure_runs("skirmish_desk", {1});
    const LoadedRun run = load_run(dirs[0]);
    const RunTournament base = intergen_tournament(run, 4);
    const RunTournament reseeded = intergen_tournament(run, 4, 0xDEED5EEDULL);

    const EloTable elo_a = elo(base.matrix);
    const EloTable elo_b = elo(reseeded.matrix);
    for (const Side side : {Side::Red, Side::Blue}) {
        std::vector<double> ra, rb;
        for (const EloEntry& e : elo_a.entries) {
            if (e.side != side) continue;
            ra.push_back(e.rating);
            rb.push_back(elo_b.rating_of(e.solution_id, side));
        }
        const double rho = spearman(ra, rb);
        std::printf("    %s spearman=%.4f\n", side_name(side), rho);
        require(rho >= 0.9, std::string(side_name(side)) + " ELO spearman below 0.9");
    }
}

// --- criterion 9: analysis unit oracles --------------------------------------------

void criterion_analysis_oracles() {
    // ELO transitive-ordering fixture.
    TournamentMatrix m;
    m.side_a = Side::Red;
    m.ids_a = {1, 2, 3};
    m.ids_b = {10, 11};
    m.entries.resize(6);
    const double fit_a[3][2] = {{1.0, 1.0}, {1.0, 0.5}, {0.0, 0.0}};
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            m.at(r, c).fitness_a = Fitness{fit_a[r][c], 0};
            m.at(r, c).fitness_b = Fitness{1.0 - fit_a[r][c], 0};
        }
    }
    const EloTable t = elo(m);
    require(t.rating_of(1, Side::Red) > t.rating_of(2, Side::Red) &&
                t.rating_of(2, Side::Red) > t.rating_of(3, Side::Red),
            "ELO transitive ordering violated");

    // Spearman hand-computed fixture.
    require(std::abs(spearman({1, 2, 3, 4}, {1, 3, 2, 4}) - 0.8) < 1e-12,
            "spearman fixture != 0.8");

    // PCA plane recovery in 50-D.
    Rng rng(0x9A);
    std::vector<double> u(50), v(50);
    for (auto& x : u) x = rng.uniform() - 0.5;
    for (auto& x : v) x = rng.uniform() - 0.5;
    std::vector<BehaviorVector> plane;
    for (int i = 0; i < 300; ++i) {
        std::vector<double> p(50);
        const double a = rng.uniform() * 2 - 1, b = rng.uniform() * 2 - 1;
        for (int d = 0; d < 50; ++d) p[d] = a * u[d] + b * v[d];
        plane.push_back(BehaviorVector{std::move(p), DistanceKind::Euclidean});
    }
    const PcaProjection pca = pca2(plane);
    require(pca.explained1 + pca.explained2 >= 0.999, "PCA plane recovery < 0.999");

    // Entropy analytic cases: 0, 1, 2 bits.
    require(action_entropy(std::array<std::uint32_t, kActionKinds>{7, 0, 0, 0, 0}) == 0.0,
            "entropy(certain) != 0");
    require(std::abs(action_entropy(std::array<std::uint32_t, kActionKinds>{3, 3, 0, 0, 0}) -
                     1.0) < 1e-12,
            "entropy(2 even) != 1");
    require(std::abs(action_entropy(std::array<std::uint32_t, kActionKinds>{5, 5, 5, 5, 0}) -
                     2.0) < 1e-12,
            "entropy(4 even) != 2");

    // Ranking-novelty counting fixtures.
    const RankingVector a{0, 1, 2}, b{1, 0, 2}, c{2, 1, 0}, d{0, 2, 1}, e2{1, 2, 0};
    require(ranking_novelty({{a, b, c}, {a, b, c}})[1] == 0.0, "identical gen not 0% new");
    require(ranking_novelty({{a, b, c}, {d, e2}})[1] == 1.0, "distinct gen not 100% new");
    require(std::abs(ranking_novelty({{a, b}, {a, b, c, d, e2}})[1] - 0.6) < 1e-12,
            "2-of-5 fixture not 60% new");
}

// --- criterion 10: lineage smoothness ----------------------------------------------

void criterion_lineage_smoothness() {
    const auto dirs = ensure_runs("pusher_desk", {1});
    const LoadedRun run = load_run(dirs[0]);

    std::map<std::uint64_t, const LineageRecord*> by_id;
    for (const auto& r : run.log.lineage) by_id.emplace(r.solution_id, &r);

    std::size_t pairs = 0;
    for (const GenerationRecord& rec : run.log.generations) {
        for (const TaskArchive& a : rec.archives) {
            for (const Elite* e : archive_elites(a)) {
                std::uint64_t cur = e->solution_id;
                while (true) {
                    const LineageRecord* r = by_id.at(cur);
                    if (r->parent_ids.empty()) break;
                    const LineageRecord* parent = by_id.at(r->parent_ids.front());
                    const PusherGenome child = pusher_parse(r->payload);
                    const PusherGenome par = pusher_parse(parent->payload);
                    require(pusher_hamming(par, child) <= 3,
                            "lineage step with hamming distance > 3");
                    ++pairs;
                    cur = parent->solution_id;
                }
            }
        }
    }
    require(pairs > 0, "no lineage pairs found");
    std::printf("    checked %zu parent-child pairs\n", pairs);
}

// --- criterion 11: budget accounting -----------------------------------------------

class CountingDomain final : public Domain {
public:
    explicit CountingDomain(const PusherParams& p) : inner_(p) {}
    std::string name() const override { return inner_.name(); }
    Solution random_solution(Side s, Rng& r) const override {
        return inner_.random_solution(s, r);
    }
    Solution vary(const Solution& a, const Solution& b, Rng& r, OpTag& t) const override {
        return inner_.vary(a, b, r, t);
    }
    DuelOutcome evaluate(const Solution& r, const Solution& b) const override {
        ++count;
        return inner_.evaluate(r, b);
    }
    std::uint32_t solution_size(const Solution& s) const override {
        return inner_.solution_size(s);
    }
    std::string encode(const Solution& s) const override { return inner_.encode(s); }
    Solution decode(const std::string& t) const override { return inner_.decode(t); }
    std::unique_ptr<Domain> with_duel_seed(std::uint64_t s) const override {
        return inner_.with_duel_seed(s);
    }
    mutable std::atomic<std::uint64_t> count{0};

private:
    PusherDomain inner_;
};

void criterion_budget_accounting() {
    const RunManifest m = load_manifest_file(manifest_path("pusher_desk"));
    CountingDomain domain(m.pusher);
    run_game(m.config, domain, 4);
    const std::uint64_t expected =
        static_cast<std::uint64_t>(m.config.n_gen) * m.config.n_budget +
        static_cast<std::uint64_t>(m.config.n_gen) * m.config.n_task * m.config.n_task;
    require(domain.count == expected, "evaluation count " +
                                          std::to_string(domain.count.load()) + " != " +
                                          std::to_string(expected));
}

// --- criterion 12: resume equivalence ----------------------------------------------

void criterion_resume_equivalence() {
    const fs::path full = g_work / "resume_full";
    const fs::path part = g_work / "resume_part";
    fs::remove_all(full);
    fs::remove_all(part);
    run_cli_ok("run --manifest " + manifest_path("pusher_desk") + " --out " + full.string() +
               " --jobs 4");
    run_cli_ok("run --manifest " + manifest_path("pusher_desk") + " --out " + part.string() +
               " --jobs 4 --stop-after 3");
    require(!fs::exists(part / "DONE"), "partial run should not be complete");
    run_cli_ok("resume --run " + part.string() + " --jobs 4");

    const RunManifest m = load_manifest_file(manifest_path("pusher_desk"));
    for (std::uint32_t g = 1; g <= m.config.n_gen; ++g)
        require(read_file(snapshot_path(full.string(), g)) ==
                    read_file(snapshot_path(part.string(), g)),
                "snapshot " + std::to_string(g) + " differs after resume");
    require(read_file((full / "metrics.csv").string()) ==
                read_file((part / "metrics.csv").string()),
            "metrics.csv differs after resume");
}

} // namespace

int main() {
    g_work = fs::temp_directory_path() / "game_acceptance";
    fs::create_directories(g_work);

    struct Criterion {
        int id;
        const char* name;
        double budget_seconds;
        std::function<void()> fn;
    };
    const std::vector<Criterion> criteria{
        {1, "archive fuzz suite (4 configs x 10k updates)", 60, criterion_archive_fuzz},
        {2, "archive oracle equivalence (100 sequences)", 30, criterion_archive_oracle},
        {3, "pusher conservation (full pusher_desk run)", 300, criterion_pusher_conservation},
        {4, "determinism incl. --jobs 8 (both desk presets)", 900, criterion_determinism},
        {5, "ablation ordering: pooled-PCA coverage medians", 3600,
         criterion_coverage_ordering},
        {6, "ablation ordering: top-10 ELO medians", 1800, criterion_elo_ordering},
        {7, "BT variation operator frequencies", 10, criterion_operator_frequencies},
        {8, "seed-robustness ELO spearman >= 0.9", 1200, criterion_seed_robustness},
        {9, "analysis unit oracles", 30, criterion_analysis_oracles},
        {10, "lineage smoothness (hamming <= 3)", 300, criterion_lineage_smoothness},
        {11, "budget accounting (exact evaluation count)", 60, criterion_budget_accounting},
        {12, "resume equivalence (byte-for-byte)", 900, criterion_resume_equivalence},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string error;
        try {
            c.fn();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (error.empty() && secs > c.budget_seconds)
            error = "time budget exceeded (" + std::to_string(secs) + "s > " +
                    std::to_string(c.budget_seconds) + "s)";
        if (error.empty()) {
            std::printf("[PASS] criterion %2d: %s (%.1fs)\n", c.id, c.name, secs);
        } else {
            std::printf("[FAIL] criterion %2d: %s (%.1fs): %s\n", c.id, c.name, secs,
                        error.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
