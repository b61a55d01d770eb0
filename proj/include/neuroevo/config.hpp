#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "neuroevo/sim.hpp"
#include "neuroevo/track.hpp"

namespace neuroevo {

/// One experiment: every knob of an evolution run plus file locations.
/// JSON field names mirror the struct fields exactly; unknown fields are
/// rejected so typos surface as errors instead of silent defaults.
struct ExperimentConfig {
    std::string track_path;
    GaConfig ga{};
    Layout layout{Layout::FF};
    VehicleParams physics{};  // default_params(layout) with per-field overrides applied
    nlohmann::json physics_overrides = nlohmann::json::object();  // explicit fields only
    int ray_count{12};
    double max_range{50.0};
    std::vector<int> hidden{12, 8};
    EpisodeConfig episode{};
    std::uint64_t seed{0};
    bool seed_set{false};  // an explicit seed is required before running
    int max_generations{60};
    std::string out_dir{"out"};

    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig load_file(const std::filesystem::path& path);

    /// Fully materialized config (all defaults explicit), canonical key
    /// order. This is what gets echoed to out_dir and hashed into replays.
    nlohmann::json to_json() const;

    /// Bundle consumed by run_evolution; validates cross-field consistency.
    EvolutionConfig evolution_config() const;

    /// Fingerprint binding an effective config to the track it ran on.
    std::uint64_t config_hash(const Track& track) const;

    /// Re-resolves physics for a different drivetrain layout, keeping any
    /// explicit per-field overrides (used by sweeps).
    void set_layout(Layout new_layout);
};

const char* layout_name(Layout layout);
Layout parse_layout(const std::string& name);

}  // namespace neuroevo
