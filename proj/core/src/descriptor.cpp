#include "game/descriptor.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <stdexcept>

namespace game {

Side side_from_string(const std::string& name) {
    if (name == "red") return Side::Red;
    if (name == "blue") return Side::Blue;
    throw std::invalid_argument("unknown side: " + name);
}

std::string to_string(DescriptorKind kind) {
    switch (kind) {
        case DescriptorKind::FrameEmbedding: return "frame_embedding";
        case DescriptorKind::Positions: return "positions";
        case DescriptorKind::HandcraftedSkirmish: return "handcrafted_skirmish";
        case DescriptorKind::GenomeStats: return "genome_stats";
        case DescriptorKind::External: return "external";
    }
    return "?";
}

DescriptorKind descriptor_kind_from_string(const std::string& name) {
    if (name == "frame_embedding") return DescriptorKind::FrameEmbedding;
    if (name == "positions") return DescriptorKind::Positions;
    if (name == "handcrafted_skirmish") return DescriptorKind::HandcraftedSkirmish;
    if (name == "genome_stats") return DescriptorKind::GenomeStats;
    if (name == "external") return DescriptorKind::External;
    throw std::invalid_argument("unknown descriptor kind: " + name);
}

namespace {

BehaviorVector describe_frames(const DuelOutcome& out, const DescriptorSpec& spec) {
    if (out.frames.empty())
        throw std::runtime_error("descriptor: outcome carries no frames");
    const auto frames = subsample_frames(out.frames, spec.num_frames);
    BehaviorVector b;
    b.kind = DistanceKind::Cosine;
    b.values.reserve(spec.num_frames * spec.pool_size * spec.pool_size);
    for (const Frame& f : frames) {
        const auto block = pool_embed(f, spec.pool_size);
        b.values.insert(b.values.end(), block.begin(), block.end());
    }
    return b;
}

BehaviorVector describe_positions(const DuelOutcome& out, Side side,
                                  const DescriptorSpec& spec) {
    const SideTrace& tr = out.trace_of(side);
    if (tr.positions.empty())
        throw std::runtime_error("descriptor: outcome carries no positions");
    const auto idx = subsample_indices(tr.positions.size(), spec.num_timesteps);
    BehaviorVector b;
    b.kind = DistanceKind::Cosine;
    for (std::size_t t : idx) {
        for (const Vec2& p : tr.positions[t]) {
            b.values.push_back(p.x / out.arena_width);
            b.values.push_back(p.y / out.arena_height);
        }
    }
    return b;
}

BehaviorVector describe_handcrafted(const DuelOutcome& out, Side side) {
    const SideTrace& tr = out.trace_of(side);
    if (!tr.mean_health_fraction)
        throw std::runtime_error("descriptor: outcome carries no health statistics");
    BehaviorVector b;
    b.kind = DistanceKind::Euclidean;
    b.values = {*tr.mean_health_fraction,
                static_cast<double>(out.completion_steps) / static_cast<double>(out.max_steps)};
    return b;
}

BehaviorVector describe_genome_stats(const DuelOutcome& out, Side side) {
    const SideTrace& tr = out.trace_of(side);
    if (!tr.genome_values || tr.genome_values->empty())
        throw std::runtime_error("descriptor: outcome carries no genome values");
    const auto& g = *tr.genome_values;
    double mean = 0.0;
    for (int v : g) mean += static_cast<double>(v);
    mean /= static_cast<double>(g.size());
    double var = 0.0;
    for (int v : g) {
        const double d = static_cast<double>(v) - mean;
        var += d * d;
    }
    var /= static_cast<double>(g.size());
    BehaviorVector b;
    b.kind = DistanceKind::Euclidean;
    b.values = {mean, std::sqrt(var)};
    return b;
}

BehaviorVector describe_external(const DuelOutcome& out, const EmbeddingTable* table) {
    if (table == nullptr)
        throw std::runtime_error("descriptor: external embeddings not loaded");
    const auto it = table->entries.find(out.eval_key);
    if (it == table->entries.end())
        throw std::runtime_error("descriptor: no external embedding for evaluation key " +
                                 std::to_string(out.eval_key));
    BehaviorVector b;
    b.kind = DistanceKind::Cosine;
    b.values.assign(it->second.begin(), it->second.end());
    return b;
}

} // namespace

BehaviorVector describe(const DuelOutcome& outcome, Side side, const DescriptorSpec& spec,
                        const EmbeddingTable* external) {
    switch (spec.kind) {
        case DescriptorKind::FrameEmbedding: return describe_frames(outcome, spec);
        case DescriptorKind::Positions: return describe_positions(outcome, side, spec);
        case DescriptorKind::HandcraftedSkirmish: return describe_handcrafted(outcome, side);
        case DescriptorKind::GenomeStats: return describe_genome_stats(outcome, side);
        case DescriptorKind::External: return describe_external(outcome, external);
    }
    throw std::logic_error("unreachable descriptor kind");
}

namespace {

constexpr char kGembMagic[4] = {'G', 'E', 'M', 'B'};
constexpr std::uint32_t kGembVersion = 1;

template <typename T>
T read_le(std::istream& in) {
    unsigned char buf[sizeof(T)];
    in.read(reinterpret_cast<char*>(buf), sizeof(T));
    if (!in) throw std::runtime_error("embeddings file truncated");
    T v = 0;
    if constexpr (std::is_floating_point_v<T>) {
        std::uint32_t bits = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i)
            bits |= static_cast<std::uint32_t>(buf[i]) << (8 * i);
        std::memcpy(&v, &bits, sizeof(T));
    } else {
        for (std::size_t i = 0; i < sizeof(T); ++i)
            v |= static_cast<T>(buf[i]) << (8 * i);
    }
    return v;
}

template <typename T>
void write_le(std::ostream& out, T v) {
    unsigned char buf[sizeof(T)];
    if constexpr (std::is_floating_point_v<T>) {
        std::uint32_t bits = 0;
        std::memcpy(&bits, &v, sizeof(T));
        for (std::size_t i = 0; i < sizeof(T); ++i)
            buf[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xFF);
    } else {
        for (std::size_t i = 0; i < sizeof(T); ++i)
            buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
    }
    out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

} // namespace

EmbeddingTable read_external_embeddings(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open embeddings file: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kGembMagic, 4) != 0)
        throw std::runtime_error("bad embeddings magic in " + path);
    const auto version = read_le<std::uint32_t>(in);
    if (version != kGembVersion)
        throw std::runtime_error("unsupported embeddings version " + std::to_string(version));
    const auto dim = read_le<std::uint32_t>(in);
    const auto count = read_le<std::uint64_t>(in);
    if (dim == 0) throw std::runtime_error("embeddings dimension is zero");

    EmbeddingTable table;
    table.dim = dim;
    table.entries.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const auto key = read_le<std::uint64_t>(in);
        std::vector<float> values(dim);
        for (auto& v : values) v = read_le<float>(in);
        if (!table.entries.emplace(key, std::move(values)).second)
            throw std::runtime_error("duplicate embedding key " + std::to_string(key));
    }
    return table;
}

void write_external_embeddings(const std::string& path, const EmbeddingTable& table) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write embeddings file: " + path);
    out.write(kGembMagic, 4);
    write_le<std::uint32_t>(out, kGembVersion);
    write_le<std::uint32_t>(out, static_cast<std::uint32_t>(table.dim));
    write_le<std::uint64_t>(out, table.entries.size());
    // Keys sorted for canonical bytes.
    std::map<std::uint64_t, const std::vector<float>*> sorted;
    for (const auto& [k, v] : table.entries) sorted.emplace(k, &v);
    for (const auto& [k, v] : sorted) {
        write_le<std::uint64_t>(out, k);
        if (v->size() != table.dim)
            throw std::runtime_error("embedding entry dimension mismatch");
        for (float f : *v) write_le<float>(out, f);
    }
    if (!out) throw std::runtime_error("failed writing embeddings file: " + path);
}

} // namespace game
