#ifndef GAME_MANIFEST_HPP
#define GAME_MANIFEST_HPP

#include <memory>
#include <string>
#include <vector>

#include "game/domain.hpp"
#include "game/evolve.hpp"

namespace game {

// Run manifest: everything a run needs, hand-editable JSON. Unknown fields
// are rejected so stale manifests fail loudly instead of silently drifting.
struct RunManifest {
    std::uint32_t schema_version = 1;
    std::string run_id;
    std::string created;  // authored timestamp, informational only
    std::string domain_kind = "pusher";
    SkirmishParams skirmish;
    PusherParams pusher;
    GameConfig config;

    bool operator==(const RunManifest&) const = default;
};

RunManifest parse_manifest(const std::string& json_text);
std::string serialize_manifest(const RunManifest& manifest);  // canonical bytes
RunManifest load_manifest_file(const std::string& path);

// Applies dotted-path overrides ("evolve.n_gen=2") onto manifest JSON text.
// Only keys already present may be overridden.
std::string apply_overrides(const std::string& json_text,
                            const std::vector<std::string>& overrides);

std::unique_ptr<Domain> make_domain(const RunManifest& manifest);

} // namespace game

#endif
