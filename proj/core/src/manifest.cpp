#include "game/manifest.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace game {

namespace {

using json = nlohmann::ordered_json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key))
            throw std::invalid_argument("manifest: unknown field \"" + where + key +
                                        "\" (schema_version 1; remove or update the file)");
    }
}

template <typename T>
T require(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key))
        throw std::invalid_argument("manifest: missing field \"" + where + key + "\"");
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw std::invalid_argument("manifest: bad value for \"" + where + key + "\"");
    }
}

} // namespace

RunManifest parse_manifest(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("manifest: invalid JSON: ") + e.what());
    }

    reject_unknown(doc, {"schema_version", "run_id", "created", "domain", "evolve",
                         "descriptor"},
                   "");

    RunManifest m;
    m.schema_version = require<std::uint32_t>(doc, "schema_version", "");
    if (m.schema_version != 1)
        throw std::invalid_argument("manifest: unsupported schema_version " +
                                    std::to_string(m.schema_version) + " (this build reads 1)");
    m.run_id = require<std::string>(doc, "run_id", "");
    if (doc.contains("created")) m.created = doc.at("created").get<std::string>();

    const json& dom = doc.at("domain");
    m.domain_kind = require<std::string>(dom, "kind", "domain.");
    if (m.domain_kind == "skirmish") {
        reject_unknown(dom,
                       {"kind", "arena_width", "arena_height", "units_per_type",
                        "melee_damage", "ranged_damage", "melee_range", "ranged_range",
                        "melee_health", "ranged_health", "sight_range", "max_steps",
                        "duel_seed", "max_leaves"},
                       "domain.");
        SkirmishParams& p = m.skirmish;
        p.arena_width = require<std::uint32_t>(dom, "arena_width", "domain.");
        p.arena_height = require<std::uint32_t>(dom, "arena_height", "domain.");
        p.units_per_type = require<std::uint32_t>(dom, "units_per_type", "domain.");
        p.melee_damage = require<double>(dom, "melee_damage", "domain.");
        p.ranged_damage = require<double>(dom, "ranged_damage", "domain.");
        p.melee_range = require<double>(dom, "melee_range", "domain.");
        p.ranged_range = require<double>(dom, "ranged_range", "domain.");
        p.melee_health = require<double>(dom, "melee_health", "domain.");
        p.ranged_health = require<double>(dom, "ranged_health", "domain.");
        p.sight_range = require<double>(dom, "sight_range", "domain.");
        p.max_steps = require<std::uint32_t>(dom, "max_steps", "domain.");
        p.duel_seed = require<std::uint64_t>(dom, "duel_seed", "domain.");
        p.max_leaves = require<std::uint32_t>(dom, "max_leaves", "domain.");
    } else if (m.domain_kind == "pusher") {
        reject_unknown(dom,
                       {"kind", "arena_width", "max_steps", "sine_period", "amplitude",
                        "rigid_mass", "k_mutations", "frame_height"},
                       "domain.");
        PusherParams& p = m.pusher;
        p.arena_width = require<double>(dom, "arena_width", "domain.");
        p.max_steps = require<std::uint32_t>(dom, "max_steps", "domain.");
        p.sine_period = require<std::uint32_t>(dom, "sine_period", "domain.");
        p.amplitude = require<double>(dom, "amplitude", "domain.");
        p.rigid_mass = require<double>(dom, "rigid_mass", "domain.");
        p.k_mutations = require<std::uint32_t>(dom, "k_mutations", "domain.");
        p.frame_height = require<std::uint32_t>(dom, "frame_height", "domain.");
    } else {
        throw std::invalid_argument("manifest: unknown domain kind \"" + m.domain_kind + "\"");
    }

    const json& ev = doc.at("evolve");
    reject_unknown(ev,
                   {"n_gen", "n_task", "n_cell", "n_budget", "n_init", "fitness_mode",
                    "archive_mode", "bootstrap_enabled", "diversity_only", "first_side",
                    "batch_size", "cvt_samples_per_cell", "master_seed"},
                   "evolve.");
    GameConfig& c = m.config;
    c.n_gen = require<std::uint32_t>(ev, "n_gen", "evolve.");
    c.n_task = require<std::uint32_t>(ev, "n_task", "evolve.");
    c.n_cell = require<std::uint32_t>(ev, "n_cell", "evolve.");
    c.n_budget = require<std::uint32_t>(ev, "n_budget", "evolve.");
    c.n_init = require<std::uint64_t>(ev, "n_init", "evolve.");
    const std::string fm = require<std::string>(ev, "fitness_mode", "evolve.");
    if (fm == "lexicographic") c.fitness_mode = FitnessMode::Lexicographic;
    else if (fm == "single_objective") c.fitness_mode = FitnessMode::SingleObjective;
    else throw std::invalid_argument("manifest: bad fitness_mode \"" + fm + "\"");
    c.archive_mode = archive_mode_from_string(require<std::string>(ev, "archive_mode", "evolve."));
    c.bootstrap_enabled = require<bool>(ev, "bootstrap_enabled", "evolve.");
    c.diversity_only = require<bool>(ev, "diversity_only", "evolve.");
    c.first_side = side_from_string(require<std::string>(ev, "first_side", "evolve."));
    c.batch_size = require<std::uint32_t>(ev, "batch_size", "evolve.");
    c.cvt_samples_per_cell = require<std::uint32_t>(ev, "cvt_samples_per_cell", "evolve.");
    c.master_seed = require<std::uint64_t>(ev, "master_seed", "evolve.");

    const json& ds = doc.at("descriptor");
    const std::string kind = require<std::string>(ds, "kind", "descriptor.");
    c.descriptor.kind = descriptor_kind_from_string(kind);
    switch (c.descriptor.kind) {
        case DescriptorKind::FrameEmbedding:
            reject_unknown(ds, {"kind", "pool_size", "num_frames"}, "descriptor.");
            c.descriptor.pool_size = require<std::uint32_t>(ds, "pool_size", "descriptor.");
            c.descriptor.num_frames = require<std::uint32_t>(ds, "num_frames", "descriptor.");
            break;
        case DescriptorKind::Positions:
            reject_unknown(ds, {"kind", "num_timesteps"}, "descriptor.");
            c.descriptor.num_timesteps =
                require<std::uint32_t>(ds, "num_timesteps", "descriptor.");
            break;
        case DescriptorKind::External:
            reject_unknown(ds, {"kind", "path"}, "descriptor.");
            c.descriptor.external_path = require<std::string>(ds, "path", "descriptor.");
            break;
        default:
            reject_unknown(ds, {"kind"}, "descriptor.");
            break;
    }

    c.validate();
    return m;
}

std::string serialize_manifest(const RunManifest& m) {
    json doc;
    doc["schema_version"] = m.schema_version;
    doc["run_id"] = m.run_id;
    doc["created"] = m.created;

    json dom;
    dom["kind"] = m.domain_kind;
    if (m.domain_kind == "skirmish") {
        const SkirmishParams& p = m.skirmish;
        dom["arena_width"] = p.arena_width;
        dom["arena_height"] = p.arena_height;
        dom["units_per_type"] = p.units_per_type;
        dom["melee_damage"] = p.melee_damage;
        dom["ranged_damage"] = p.ranged_damage;
        dom["melee_range"] = p.melee_range;
        dom["ranged_range"] = p.ranged_range;
        dom["melee_health"] = p.melee_health;
        dom["ranged_health"] = p.ranged_health;
        dom["sight_range"] = p.sight_range;
        dom["max_steps"] = p.max_steps;
        dom["duel_seed"] = p.duel_seed;
        dom["max_leaves"] = p.max_leaves;
    } else {
        const PusherParams& p = m.pusher;
        dom["arena_width"] = p.arena_width;
        dom["max_steps"] = p.max_steps;
        dom["sine_period"] = p.sine_period;
        dom["amplitude"] = p.amplitude;
        dom["rigid_mass"] = p.rigid_mass;
        dom["k_mutations"] = p.k_mutations;
        dom["frame_height"] = p.frame_height;
    }
    doc["domain"] = dom;

    const GameConfig& c = m.config;
    json ev;
    ev["n_gen"] = c.n_gen;
    ev["n_task"] = c.n_task;
    ev["n_cell"] = c.n_cell;
    ev["n_budget"] = c.n_budget;
    ev["n_init"] = c.n_init;
    ev["fitness_mode"] =
        c.fitness_mode == FitnessMode::Lexicographic ? "lexicographic" : "single_objective";
    ev["archive_mode"] = to_string(c.archive_mode);
    ev["bootstrap_enabled"] = c.bootstrap_enabled;
    ev["diversity_only"] = c.diversity_only;
    ev["first_side"] = side_name(c.first_side);
    ev["batch_size"] = c.batch_size;
    ev["cvt_samples_per_cell"] = c.cvt_samples_per_cell;
    ev["master_seed"] = c.master_seed;
    doc["evolve"] = ev;

    json ds;
    ds["kind"] = to_string(c.descriptor.kind);
    switch (c.descriptor.kind) {
        case DescriptorKind::FrameEmbedding:
            ds["pool_size"] = c.descriptor.pool_size;
            ds["num_frames"] = c.descriptor.num_frames;
            break;
        case DescriptorKind::Positions:
            ds["num_timesteps"] = c.descriptor.num_timesteps;
            break;
        case DescriptorKind::External:
            ds["path"] = c.descriptor.external_path;
            break;
        default:
            break;
    }
    doc["descriptor"] = ds;

    return doc.dump(2) + "\n";
}

RunManifest load_manifest_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open manifest: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_manifest(buf.str());
}

std::string apply_overrides(const std::string& json_text,
                            const std::vector<std::string>& overrides) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("manifest: invalid JSON: ") + e.what());
    }
    for (const std::string& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("override must be key=value: " + ov);
        const std::string path = ov.substr(0, eq);
        const std::string value = ov.substr(eq + 1);

        json* node = &doc;
        std::size_t start = 0;
        std::string last;
        for (;;) {
            const auto dot = path.find('.', start);
            const std::string part = path.substr(start, dot - start);
            if (dot == std::string::npos) {
                last = part;
                break;
            }
            if (!node->contains(part))
                throw std::invalid_argument("override path not in manifest: " + path);
            node = &node->at(part);
            start = dot + 1;
        }
        if (!node->contains(last))
            throw std::invalid_argument("override key not in manifest: " + path);
        json& slot = node->at(last);
        try {
            if (slot.is_string()) slot = value;
            else if (slot.is_boolean()) slot = (value == "true" || value == "1");
            else if (slot.is_number_float()) slot = std::stod(value);
            else if (slot.is_number_unsigned()) slot = std::stoull(value);
            else if (slot.is_number_integer()) slot = std::stoll(value);
            else throw std::invalid_argument("override target is not a scalar: " + path);
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) {
            throw std::invalid_argument("bad override value for " + path + ": " + value);
        }
    }
    return doc.dump(2) + "\n";
}

std::unique_ptr<Domain> make_domain(const RunManifest& m) {
    if (m.domain_kind == "skirmish") return std::make_unique<SkirmishDomain>(m.skirmish);
    return std::make_unique<PusherDomain>(m.pusher);
}

} // namespace game
