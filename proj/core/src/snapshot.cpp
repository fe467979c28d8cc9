#include "game/snapshot.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace game {

std::uint64_t fnv1a(const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 14695981039346656037ULL;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string bytes = buf.str();
    return fnv1a(bytes.data(), bytes.size());
}

namespace {

constexpr char kSnapMagic[4] = {'G', 'S', 'N', 'P'};
constexpr char kTraceMagic[4] = {'G', 'T', 'R', 'C'};
constexpr std::uint32_t kSnapVersion = 1;
constexpr std::uint32_t kTraceVersion = 1;

struct Writer {
    std::string bytes;

    void raw(const void* p, std::size_t n) { bytes.append(static_cast<const char*>(p), n); }
    template <typename T>
    void u(T v) {
        static_assert(std::is_unsigned_v<T>);
        for (std::size_t i = 0; i < sizeof(T); ++i)
            bytes.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
    void f64(double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, 8);
        u<std::uint64_t>(bits);
    }
    void f32(float v) {
        std::uint32_t bits;
        std::memcpy(&bits, &v, 4);
        u<std::uint32_t>(bits);
    }
    void str(const std::string& s) {
        u<std::uint32_t>(static_cast<std::uint32_t>(s.size()));
        raw(s.data(), s.size());
    }
};

struct Reader {
    const std::string& bytes;
    std::size_t pos = 0;

    explicit Reader(const std::string& b) : bytes(b) {}

    void need(std::size_t n) const {
        if (pos + n > bytes.size()) throw std::runtime_error("file truncated");
    }
    template <typename T>
    T u() {
        static_assert(std::is_unsigned_v<T>);
        need(sizeof(T));
        T v = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i)
            v |= static_cast<T>(static_cast<unsigned char>(bytes[pos + i])) << (8 * i);
        pos += sizeof(T);
        return v;
    }
    double f64() {
        const std::uint64_t bits = u<std::uint64_t>();
        double v;
        std::memcpy(&v, &bits, 8);
        return v;
    }
    float f32() {
        const std::uint32_t bits = u<std::uint32_t>();
        float v;
        std::memcpy(&v, &bits, 4);
        return v;
    }
    std::string str() {
        const auto n = u<std::uint32_t>();
        need(n);
        std::string s = bytes.substr(pos, n);
        pos += n;
        return s;
    }
};

void write_behavior(Writer& w, const BehaviorVector& b) {
    w.u<std::uint8_t>(static_cast<std::uint8_t>(b.kind));
    w.u<std::uint32_t>(static_cast<std::uint32_t>(b.values.size()));
    for (double v : b.values) w.f64(v);
}

BehaviorVector read_behavior(Reader& r) {
    BehaviorVector b;
    b.kind = static_cast<DistanceKind>(r.u<std::uint8_t>());
    const auto n = r.u<std::uint32_t>();
    b.values.resize(n);
    for (auto& v : b.values) v = r.f64();
    return b;
}

void write_elite(Writer& w, const Elite& e, const std::string& payload) {
    w.u<std::uint64_t>(e.solution_id);
    w.f64(e.fitness.primary);
    w.u<std::uint32_t>(e.fitness.size);
    write_behavior(w, e.behavior);
    w.str(payload);
}

Elite read_elite(Reader& r, std::string& payload_out) {
    Elite e;
    e.solution_id = r.u<std::uint64_t>();
    e.fitness.primary = r.f64();
    e.fitness.size = r.u<std::uint32_t>();
    e.behavior = read_behavior(r);
    payload_out = r.str();
    return e;
}

void write_tasks(Writer& w, const TaskSet& tasks,
                 const std::unordered_map<std::uint64_t, std::string>& payloads) {
    w.u<std::uint8_t>(static_cast<std::uint8_t>(tasks.side));
    w.u<std::uint32_t>(static_cast<std::uint32_t>(tasks.solutions.size()));
    for (const auto& t : tasks.solutions) {
        w.u<std::uint64_t>(t.id);
        w.str(payloads.at(t.id));
    }
}

TaskSet read_tasks(Reader& r, const Domain& domain,
                   std::unordered_map<std::uint64_t, std::string>& payloads) {
    TaskSet tasks;
    tasks.side = static_cast<Side>(r.u<std::uint8_t>());
    const auto n = r.u<std::uint32_t>();
    tasks.solutions.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        TaskSolution t;
        t.id = r.u<std::uint64_t>();
        const std::string payload = r.str();
        t.solution = domain.decode(payload);
        payloads.emplace(t.id, payload);
        tasks.solutions.push_back(std::move(t));
    }
    return tasks;
}

void write_matrix(Writer& w, const TournamentMatrix& m) {
    w.u<std::uint8_t>(static_cast<std::uint8_t>(m.side_a));
    w.u<std::uint32_t>(static_cast<std::uint32_t>(m.rows()));
    w.u<std::uint32_t>(static_cast<std::uint32_t>(m.cols()));
    for (auto id : m.ids_a) w.u<std::uint64_t>(id);
    for (auto id : m.ids_b) w.u<std::uint64_t>(id);
    for (const DuelRecord& e : m.entries) {
        w.f64(e.fitness_a.primary);
        w.u<std::uint32_t>(e.fitness_a.size);
        w.f64(e.fitness_b.primary);
        w.u<std::uint32_t>(e.fitness_b.size);
        write_behavior(w, e.behavior_a);
        write_behavior(w, e.behavior_b);
        for (auto c : e.actions_a) w.u<std::uint32_t>(c);
        for (auto c : e.actions_b) w.u<std::uint32_t>(c);
        w.u<std::uint8_t>(static_cast<std::uint8_t>(e.winner));
    }
}

TournamentMatrix read_matrix(Reader& r) {
    TournamentMatrix m;
    m.side_a = static_cast<Side>(r.u<std::uint8_t>());
    const auto rows = r.u<std::uint32_t>();
    const auto cols = r.u<std::uint32_t>();
    m.ids_a.resize(rows);
    m.ids_b.resize(cols);
    for (auto& id : m.ids_a) id = r.u<std::uint64_t>();
    for (auto& id : m.ids_b) id = r.u<std::uint64_t>();
    m.entries.resize(static_cast<std::size_t>(rows) * cols);
    for (DuelRecord& e : m.entries) {
        e.fitness_a.primary = r.f64();
        e.fitness_a.size = r.u<std::uint32_t>();
        e.fitness_b.primary = r.f64();
        e.fitness_b.size = r.u<std::uint32_t>();
        e.behavior_a = read_behavior(r);
        e.behavior_b = read_behavior(r);
        for (auto& c : e.actions_a) c = r.u<std::uint32_t>();
        for (auto& c : e.actions_b) c = r.u<std::uint32_t>();
        e.winner = static_cast<Winner>(r.u<std::uint8_t>());
    }
    return m;
}

void write_archive(Writer& w, const TaskArchive& archive,
                   const std::unordered_map<std::uint64_t, std::string>& payloads) {
    if (const auto* g = std::get_if<GrowingArchive>(&archive)) {
        w.u<std::uint8_t>(0);  // growing
        w.u<std::uint8_t>(static_cast<std::uint8_t>(g->distance_kind()));
        w.u<std::uint8_t>(static_cast<std::uint8_t>(g->fitness_mode()));
        w.u<std::uint32_t>(static_cast<std::uint32_t>(g->capacity()));
        w.u<std::uint32_t>(static_cast<std::uint32_t>(g->size()));
        for (const Cell& c : g->cells()) {
            write_behavior(w, c.centroid);
            write_elite(w, c.elite, payloads.at(c.elite.solution_id));
            write_elite(w, c.backup, payloads.at(c.backup.solution_id));
        }
        return;
    }
    const auto& f = std::get<FixedCvtArchive>(archive);
    w.u<std::uint8_t>(1);  // fixed cvt
    w.u<std::uint8_t>(static_cast<std::uint8_t>(f.distance_kind()));
    w.u<std::uint8_t>(static_cast<std::uint8_t>(f.fitness_mode()));
    w.u<std::uint32_t>(static_cast<std::uint32_t>(f.capacity()));
    for (const auto& c : f.centroids()) write_behavior(w, c);
    for (const auto& e : f.elites()) {
        w.u<std::uint8_t>(e ? 1 : 0);
        if (e) write_elite(w, *e, payloads.at(e->solution_id));
    }
}

TaskArchive read_archive(Reader& r,
                         std::unordered_map<std::uint64_t, std::string>& payloads) {
    const auto mode = r.u<std::uint8_t>();
    const auto kind = static_cast<DistanceKind>(r.u<std::uint8_t>());
    const auto fmode = static_cast<FitnessMode>(r.u<std::uint8_t>());
    const auto capacity = r.u<std::uint32_t>();
    if (mode == 0) {
        const auto n = r.u<std::uint32_t>();
        std::vector<Cell> cells;
        cells.reserve(n);
        for (std::uint32_t i = 0; i < n; ++i) {
            Cell c;
            c.centroid = read_behavior(r);
            std::string payload;
            c.elite = read_elite(r, payload);
            payloads.emplace(c.elite.solution_id, payload);
            c.backup = read_elite(r, payload);
            payloads.emplace(c.backup.solution_id, payload);
            cells.push_back(std::move(c));
        }
        return GrowingArchive::from_cells(capacity, kind, fmode, std::move(cells));
    }
    std::vector<BehaviorVector> centroids;
    centroids.reserve(capacity);
    for (std::uint32_t i = 0; i < capacity; ++i) centroids.push_back(read_behavior(r));
    std::vector<std::optional<Elite>> elites;
    elites.reserve(capacity);
    for (std::uint32_t i = 0; i < capacity; ++i) {
        if (r.u<std::uint8_t>() == 0) {
            elites.emplace_back(std::nullopt);
            continue;
        }
        std::string payload;
        Elite e = read_elite(r, payload);
        payloads.emplace(e.solution_id, payload);
        elites.emplace_back(std::move(e));
    }
    return FixedCvtArchive::from_state(std::move(centroids), fmode, std::move(elites));
}

void write_lineage(Writer& w, const std::vector<LineageRecord>& records) {
    w.u<std::uint32_t>(static_cast<std::uint32_t>(records.size()));
    for (const auto& rec : records) {
        w.u<std::uint64_t>(rec.solution_id);
        w.u<std::uint32_t>(rec.generation);
        w.u<std::uint8_t>(static_cast<std::uint8_t>(rec.op));
        w.u<std::uint8_t>(static_cast<std::uint8_t>(rec.parent_ids.size()));
        for (auto p : rec.parent_ids) w.u<std::uint64_t>(p);
        w.str(rec.payload);
    }
}

std::vector<LineageRecord> read_lineage(Reader& r) {
    const auto n = r.u<std::uint32_t>();
    std::vector<LineageRecord> records;
    records.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        LineageRecord rec;
        rec.solution_id = r.u<std::uint64_t>();
        rec.generation = r.u<std::uint32_t>();
        rec.op = static_cast<OpTag>(r.u<std::uint8_t>());
        const auto np = r.u<std::uint8_t>();
        for (std::uint8_t p = 0; p < np; ++p) rec.parent_ids.push_back(r.u<std::uint64_t>());
        rec.payload = r.str();
        records.push_back(std::move(rec));
    }
    return records;
}

void finish_file(const std::string& path, Writer& w) {
    w.u<std::uint64_t>(fnv1a(w.bytes.data(), w.bytes.size()));
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out.write(w.bytes.data(), static_cast<std::streamsize>(w.bytes.size()));
    if (!out) throw std::runtime_error("failed writing file: " + path);
}

std::string read_checksummed(const std::string& path, const char magic[4]) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string bytes = buf.str();
    if (bytes.size() < 12 || std::memcmp(bytes.data(), magic, 4) != 0)
        throw std::runtime_error("bad file magic: " + path);
    std::uint64_t stored = 0;
    for (std::size_t i = 0; i < 8; ++i)
        stored |= static_cast<std::uint64_t>(
                      static_cast<unsigned char>(bytes[bytes.size() - 8 + i]))
                  << (8 * i);
    if (fnv1a(bytes.data(), bytes.size() - 8) != stored)
        throw std::runtime_error("checksum mismatch: " + path);
    bytes.resize(bytes.size() - 8);
    return bytes;
}

} // namespace

void save_snapshot(const std::string& path, const GenerationsLog& log,
                   std::size_t gen_index) {
    const GenerationRecord& rec = log.generations.at(gen_index);

    std::unordered_map<std::uint64_t, std::string> payloads;
    payloads.reserve(log.lineage.size());
    for (const auto& l : log.lineage) payloads.emplace(l.solution_id, l.payload);

    std::uint64_t id_counter = 0;
    std::vector<LineageRecord> slice;
    for (const auto& l : log.lineage) {
        if (l.generation <= rec.index && l.solution_id > id_counter)
            id_counter = l.solution_id;
        if (l.generation == rec.index || (gen_index == 0 && l.generation == 0))
            slice.push_back(l);
    }

    Writer w;
    w.raw(kSnapMagic, 4);
    w.u<std::uint32_t>(kSnapVersion);
    w.str(log.domain_name);
    w.u<std::uint32_t>(rec.index);
    w.u<std::uint8_t>(static_cast<std::uint8_t>(rec.side));
    w.u<std::uint64_t>(rec.evaluations);
    w.u<std::uint64_t>(id_counter);
    write_tasks(w, rec.tasks_used, payloads);
    write_tasks(w, rec.tasks_selected, payloads);
    w.u<std::uint32_t>(static_cast<std::uint32_t>(rec.archives.size()));
    for (const TaskArchive& a : rec.archives) write_archive(w, a, payloads);
    write_matrix(w, rec.bootstrap_matrix);
    write_lineage(w, slice);
    finish_file(path, w);
}

SnapshotData load_snapshot(const std::string& path, const Domain& domain) {
    const std::string bytes = read_checksummed(path, kSnapMagic);
    Reader r(bytes);
    r.pos = 4;
    const auto version = r.u<std::uint32_t>();
    if (version != kSnapVersion)
        throw std::runtime_error("unsupported snapshot version " + std::to_string(version) +
                                 " in " + path + " (this build reads " +
                                 std::to_string(kSnapVersion) + ")");
    SnapshotData d;
    d.domain_name = r.str();
    if (d.domain_name != domain.name())
        throw std::runtime_error("snapshot domain \"" + d.domain_name +
                                 "\" does not match \"" + domain.name() + "\"");
    d.record.index = r.u<std::uint32_t>();
    d.record.side = static_cast<Side>(r.u<std::uint8_t>());
    d.record.evaluations = r.u<std::uint64_t>();
    d.id_counter = r.u<std::uint64_t>();
    d.record.tasks_used = read_tasks(r, domain, d.payloads);
    d.record.tasks_selected = read_tasks(r, domain, d.payloads);
    const auto n_arch = r.u<std::uint32_t>();
    d.record.archives.reserve(n_arch);
    for (std::uint32_t i = 0; i < n_arch; ++i)
        d.record.archives.push_back(read_archive(r, d.payloads));
    d.record.bootstrap_matrix = read_matrix(r);
    d.lineage_slice = read_lineage(r);
    if (r.pos != bytes.size()) throw std::runtime_error("trailing bytes in " + path);
    return d;
}

std::vector<std::string> validate_snapshot_invariants(const SnapshotData& d) {
    std::vector<std::string> issues;
    const auto note = [&](const std::string& s) { issues.push_back(s); };

    std::size_t arch_idx = 0;
    for (const TaskArchive& a : d.record.archives) {
        const std::string where = "archive " + std::to_string(arch_idx);
        if (const auto* g = std::get_if<GrowingArchive>(&a)) {
            if (g->size() > g->capacity()) note(where + ": over capacity");
            std::size_t dim = g->size() ? g->cells().front().centroid.dim() : 0;
            for (std::size_t i = 0; i < g->size(); ++i) {
                const Cell& c = g->cells()[i];
                if (c.centroid.dim() != dim)
                    note(where + " cell " + std::to_string(i) + ": dimension mismatch");
                if (!(c.backup.behavior == c.centroid))
                    note(where + " cell " + std::to_string(i) +
                         ": backup elite not anchored to centroid");
                const std::size_t home = g->find_cell(c.elite.behavior);
                if (home != i)
                    note(where + " cell " + std::to_string(i) + ": hole (elite maps to " +
                         std::to_string(home) + ")");
            }
        } else {
            const auto& f = std::get<FixedCvtArchive>(a);
            for (std::size_t i = 0; i < f.capacity(); ++i) {
                const auto& e = f.elites()[i];
                if (!e) continue;
                if (f.find_cell(e->behavior) != i)
                    note(where + " cell " + std::to_string(i) + ": elite outside its cell");
            }
        }
        ++arch_idx;
    }

    const TournamentMatrix& m = d.record.bootstrap_matrix;
    if (m.entries.size() != m.rows() * m.cols())
        note("bootstrap matrix: entry count mismatch");
    if (m.rows() != d.record.tasks_selected.solutions.size() ||
        m.cols() != d.record.tasks_used.solutions.size())
        note("bootstrap matrix: dimensions do not match task sets");
    return issues;
}

void save_trace(const std::string& path, const DuelTrace& t) {
    Writer w;
    w.raw(kTraceMagic, 4);
    w.u<std::uint32_t>(kTraceVersion);
    w.u<std::uint32_t>(t.width);
    w.u<std::uint32_t>(t.height);
    w.u<std::uint32_t>(static_cast<std::uint32_t>(t.frames.size()));
    for (const Frame& f : t.frames) {
        if (f.width != t.width || f.height != t.height)
            throw std::invalid_argument("trace frame dimensions inconsistent");
        for (float v : f.pixels) w.f32(v);
    }
    w.u<std::uint32_t>(static_cast<std::uint32_t>(t.red_actions.size()));
    w.raw(t.red_actions.data(), t.red_actions.size());
    w.u<std::uint32_t>(static_cast<std::uint32_t>(t.blue_actions.size()));
    w.raw(t.blue_actions.data(), t.blue_actions.size());
    w.f64(t.fitness_red);
    w.f64(t.fitness_blue);
    w.u<std::uint32_t>(t.completion_steps);
    w.u<std::uint32_t>(t.max_steps);
    finish_file(path, w);
}

DuelTrace load_trace(const std::string& path) {
    const std::string bytes = read_checksummed(path, kTraceMagic);
    Reader r(bytes);
    r.pos = 4;
    const auto version = r.u<std::uint32_t>();
    if (version != kTraceVersion)
        throw std::runtime_error("unsupported trace version " + std::to_string(version));
    DuelTrace t;
    t.width = r.u<std::uint32_t>();
    t.height = r.u<std::uint32_t>();
    const auto n = r.u<std::uint32_t>();
    t.frames.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        Frame f = make_frame(t.width, t.height);
        for (auto& v : f.pixels) v = r.f32();
        t.frames.push_back(std::move(f));
    }
    const auto nr = r.u<std::uint32_t>();
    r.need(nr);
    t.red_actions.assign(r.bytes.begin() + static_cast<std::ptrdiff_t>(r.pos),
                         r.bytes.begin() + static_cast<std::ptrdiff_t>(r.pos + nr));
    r.pos += nr;
    const auto nb = r.u<std::uint32_t>();
    r.need(nb);
    t.blue_actions.assign(r.bytes.begin() + static_cast<std::ptrdiff_t>(r.pos),
                          r.bytes.begin() + static_cast<std::ptrdiff_t>(r.pos + nb));
    r.pos += nb;
    t.fitness_red = r.f64();
    t.fitness_blue = r.f64();
    t.completion_steps = r.u<std::uint32_t>();
    t.max_steps = r.u<std::uint32_t>();
    if (r.pos != bytes.size()) throw std::runtime_error("trailing bytes in " + path);
    return t;
}

DuelTrace trace_from_outcome(const DuelOutcome& out) {
    DuelTrace t;
    if (!out.frames.empty()) {
        t.width = static_cast<std::uint32_t>(out.frames.front().width);
        t.height = static_cast<std::uint32_t>(out.frames.front().height);
    }
    t.frames = out.frames;
    t.red_actions = out.red.action_log;
    t.blue_actions = out.blue.action_log;
    t.fitness_red = out.fitness_red;
    t.fitness_blue = out.fitness_blue;
    t.completion_steps = out.completion_steps;
    t.max_steps = out.max_steps;
    return t;
}

void export_metrics(const GenerationsLog& log, const std::string& run_id,
                    const std::string& path) {
    std::string csv = "run_id,generation,metric,value\n";
    char buf[64];
    const auto num = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    for (const GenerationRecord& rec : log.generations) {
        const std::string prefix = run_id + "," + std::to_string(rec.index) + ",";
        std::size_t elites = 0;
        double best = -std::numeric_limits<double>::infinity();
        double sum = 0.0;
        double size_sum = 0.0;
        double size_max = 0.0;
        for (const TaskArchive& a : rec.archives) {
            for (const Elite* e : archive_elites(a)) {
                ++elites;
                best = std::max(best, e->fitness.primary);
                sum += e->fitness.primary;
                size_sum += e->fitness.size;
                size_max = std::max(size_max, static_cast<double>(e->fitness.size));
            }
        }
        const double denom = elites ? static_cast<double>(elites) : 1.0;
        csv += prefix + "evaluations," + std::to_string(rec.evaluations) + "\n";
        csv += prefix + "elite_count," + std::to_string(elites) + "\n";
        csv += prefix + "fitness_best," + num(elites ? best : 0.0) + "\n";
        csv += prefix + "fitness_mean," + num(sum / denom) + "\n";
        csv += prefix + "solution_size_mean," + num(size_sum / denom) + "\n";
        csv += prefix + "solution_size_max," + num(size_max) + "\n";
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write metrics: " + path);
    out << csv;
    if (!out) throw std::runtime_error("failed writing metrics: " + path);
}

} // namespace game
