#ifndef GAME_DESCRIPTOR_HPP
#define GAME_DESCRIPTOR_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "game/behavior_vector.hpp"
#include "game/duel.hpp"

namespace game {

enum class DescriptorKind : std::uint8_t {
    FrameEmbedding,      // pooled frame embeddings, concatenated (cosine)
    Positions,           // evaluated-side unit positions at sampled timesteps (cosine)
    HandcraftedSkirmish, // (mean remaining health, completion fraction) (euclidean)
    GenomeStats,         // (mean, population std) of genome integers (euclidean)
    External,            // looked up by eval key from an embeddings file (cosine)
};

struct DescriptorSpec {
    DescriptorKind kind = DescriptorKind::FrameEmbedding;
    std::size_t pool_size = 8;     // FrameEmbedding: d (vector is f * d^2 long)
    std::size_t num_frames = 5;    // FrameEmbedding: f
    std::size_t num_timesteps = 4; // Positions
    std::string external_path;     // External

    bool operator==(const DescriptorSpec&) const = default;

    DistanceKind distance_kind() const {
        switch (kind) {
            case DescriptorKind::FrameEmbedding:
            case DescriptorKind::Positions:
            case DescriptorKind::External:
                return DistanceKind::Cosine;
            default:
                return DistanceKind::Euclidean;
        }
    }
};

std::string to_string(DescriptorKind kind);
DescriptorKind descriptor_kind_from_string(const std::string& name);

// Keyed external embedding table.
struct EmbeddingTable {
    std::size_t dim = 0;
    std::unordered_map<std::uint64_t, std::vector<float>> entries;
};

// GEMB file: magic "GEMB", u32 version, u32 D, u64 count, then repeated
// (u64 evaluation_key, D float32) records, all little-endian. Duplicate keys
// are an error. Produced offline by any embedding tool; consumed read-only.
EmbeddingTable read_external_embeddings(const std::string& path);
void write_external_embeddings(const std::string& path, const EmbeddingTable& table);

// Turns one evaluation into a behavior vector for the given side. The
// FrameEmbedding and External descriptors describe the whole video and are
// identical for both sides; the others are side-specific.
// `external` may be null unless spec.kind == External.
BehaviorVector describe(const DuelOutcome& outcome, Side side, const DescriptorSpec& spec,
                        const EmbeddingTable* external = nullptr);

} // namespace game

#endif
