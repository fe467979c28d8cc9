#ifndef GAME_SNAPSHOT_HPP
#define GAME_SNAPSHOT_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "game/evolve.hpp"

namespace game {

// 64-bit FNV-1a over a byte range.
std::uint64_t fnv1a(const void* data, std::size_t size);
std::uint64_t fnv1a_file(const std::string& path);

// Per-generation snapshot: everything needed to resume after this generation
// and to analyze it post hoc. Binary, little-endian, trailing FNV-1a checksum
// over all preceding bytes. Elites and tasks embed their solution payloads,
// so snapshots are self-contained.
struct SnapshotData {
    GenerationRecord record;
    // Lineage records issued during this generation (the first snapshot also
    // carries the generation-0 records of the initial task sampling).
    std::vector<LineageRecord> lineage_slice;
    std::uint64_t id_counter = 0;
    std::string domain_name;
    // Payloads of every solution referenced by the record (elites, backups,
    // tasks), keyed by id.
    std::unordered_map<std::uint64_t, std::string> payloads;
};

// Writes the snapshot for log.generations[gen_index].
void save_snapshot(const std::string& path, const GenerationsLog& log,
                   std::size_t gen_index);
SnapshotData load_snapshot(const std::string& path, const Domain& domain);

// Structural validation beyond the checksum: archive invariants (capacity,
// backup anchoring, hole-freeness), behavior dimensions, matrix completeness.
// Returns human-readable violations; empty = clean.
std::vector<std::string> validate_snapshot_invariants(const SnapshotData& data);

// Duel trace file ("GTRC"): frames plus per-side action logs of one duel,
// with the same checksum convention.
struct DuelTrace {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::vector<Frame> frames;
    std::vector<std::uint8_t> red_actions;
    std::vector<std::uint8_t> blue_actions;
    double fitness_red = 0.0;
    double fitness_blue = 0.0;
    std::uint32_t completion_steps = 0;
    std::uint32_t max_steps = 0;
};

void save_trace(const std::string& path, const DuelTrace& trace);
DuelTrace load_trace(const std::string& path);
DuelTrace trace_from_outcome(const DuelOutcome& outcome);

// Deterministic CSV export of per-generation run metrics
// (run_id,generation,metric,value with 17 significant digits).
void export_metrics(const GenerationsLog& log, const std::string& run_id,
                    const std::string& path);

} // namespace game

#endif
