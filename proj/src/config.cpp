#include "neuroevo/config.hpp"

#include <fstream>
#include <sstream>

#include "neuroevo/error.hpp"
#include "neuroevo/util.hpp"

namespace neuroevo {

using nlohmann::json;

const char* layout_name(Layout layout) { return layout == Layout::FF ? "FF" : "FR"; }

Layout parse_layout(const std::string& name) {
    if (name == "FF") return Layout::FF;
    if (name == "FR") return Layout::FR;
    throw ValidationError("physics: layout must be \"FF\" or \"FR\"");
}

namespace {

void check_fields(const json& obj, std::initializer_list<const char*> allowed,
                  const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) throw ValidationError("config: unknown field \"" + where + key + "\"");
    }
}

double get_number(const json& obj, const char* field, double fallback) {
    auto it = obj.find(field);
    if (it == obj.end()) return fallback;
    if (!it->is_number())
        throw ParseError("config: field \"" + std::string(field) + "\" must be a number");
    return it->get<double>();
}

int get_int(const json& obj, const char* field, int fallback) {
    auto it = obj.find(field);
    if (it == obj.end()) return fallback;
    if (!it->is_number_integer())
        throw ParseError("config: field \"" + std::string(field) + "\" must be an integer");
    return it->get<int>();
}

bool get_bool(const json& obj, const char* field, bool fallback) {
    auto it = obj.find(field);
    if (it == obj.end()) return fallback;
    if (!it->is_boolean())
        throw ParseError("config: field \"" + std::string(field) + "\" must be a boolean");
    return it->get<bool>();
}

VehicleParams resolve_physics(Layout layout, const json& overrides) {
    VehicleParams p = default_params(layout);
    p.mass = get_number(overrides, "mass", p.mass);
    p.yaw_inertia = get_number(overrides, "yaw_inertia", p.yaw_inertia);
    p.lf = get_number(overrides, "lf", p.lf);
    p.lr = get_number(overrides, "lr", p.lr);
    p.cornering_stiffness_front =
        get_number(overrides, "cornering_stiffness_front", p.cornering_stiffness_front);
    p.cornering_stiffness_rear =
        get_number(overrides, "cornering_stiffness_rear", p.cornering_stiffness_rear);
    p.friction_coeff = get_number(overrides, "friction_coeff", p.friction_coeff);
    p.max_drive_force = get_number(overrides, "max_drive_force", p.max_drive_force);
    p.max_brake_force = get_number(overrides, "max_brake_force", p.max_brake_force);
    p.max_steer = get_number(overrides, "max_steer", p.max_steer);
    p.drag_coeff = get_number(overrides, "drag_coeff", p.drag_coeff);
    p.rolling_resist = get_number(overrides, "rolling_resist", p.rolling_resist);
    p.max_speed = get_number(overrides, "max_speed", p.max_speed);
    if (auto fp = overrides.find("footprint"); fp != overrides.end()) {
        if (!fp->is_object())
            throw ParseError("config: field \"physics.footprint\" must be an object");
        check_fields(*fp, {"length", "width"}, "physics.footprint.");
        p.footprint.length = get_number(*fp, "length", p.footprint.length);
        p.footprint.width = get_number(*fp, "width", p.footprint.width);
    }
    return p;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    if (!j.is_object()) throw ParseError("config: top level must be an object");
    check_fields(j,
                 {"track_path", "ga", "physics", "rays", "net", "episode", "seed",
                  "max_generations", "out_dir"},
                 "");

    ExperimentConfig cfg;
    if (auto it = j.find("track_path"); it != j.end()) {
        if (!it->is_string()) throw ParseError("config: field \"track_path\" must be a string");
        cfg.track_path = it->get<std::string>();
    }
    if (auto it = j.find("out_dir"); it != j.end()) {
        if (!it->is_string()) throw ParseError("config: field \"out_dir\" must be a string");
        cfg.out_dir = it->get<std::string>();
    }
    if (auto it = j.find("seed"); it != j.end()) {
        if (!it->is_number_unsigned() && !it->is_number_integer())
            throw ParseError("config: field \"seed\" must be a non-negative integer");
        if (it->is_number_integer() && it->get<std::int64_t>() < 0)
            throw ValidationError("config: seed must be non-negative");
        cfg.seed = it->get<std::uint64_t>();
        cfg.seed_set = true;
    }
    cfg.max_generations = get_int(j, "max_generations", cfg.max_generations);

    if (auto it = j.find("ga"); it != j.end()) {
        const json& g = *it;
        if (!g.is_object()) throw ParseError("config: field \"ga\" must be an object");
        check_fields(g,
                     {"population", "top_fraction", "crossover_rate", "mutation_rate",
                      "mutation_range", "elitism"},
                     "ga.");
        cfg.ga.population = get_int(g, "population", cfg.ga.population);
        cfg.ga.top_fraction = get_number(g, "top_fraction", cfg.ga.top_fraction);
        cfg.ga.crossover_rate = get_number(g, "crossover_rate", cfg.ga.crossover_rate);
        cfg.ga.mutation_rate = get_number(g, "mutation_rate", cfg.ga.mutation_rate);
        cfg.ga.mutation_range = get_number(g, "mutation_range", cfg.ga.mutation_range);
        cfg.ga.elitism = get_bool(g, "elitism", cfg.ga.elitism);
    }

    if (auto it = j.find("physics"); it != j.end()) {
        const json& ph = *it;
        if (!ph.is_object()) throw ParseError("config: field \"physics\" must be an object");
        check_fields(ph,
                     {"layout", "mass", "yaw_inertia", "lf", "lr", "cornering_stiffness_front",
                      "cornering_stiffness_rear", "friction_coeff", "max_drive_force",
                      "max_brake_force", "max_steer", "drag_coeff", "rolling_resist", "max_speed",
                      "footprint"},
                     "physics.");
        if (auto lt = ph.find("layout"); lt != ph.end()) {
            if (!lt->is_string())
                throw ParseError("config: field \"physics.layout\" must be a string");
            cfg.layout = parse_layout(lt->get<std::string>());
        }
        cfg.physics_overrides = ph;
        cfg.physics_overrides.erase("layout");
    }
    cfg.physics = resolve_physics(cfg.layout, cfg.physics_overrides);

    if (auto it = j.find("rays"); it != j.end()) {
        const json& r = *it;
        if (!r.is_object()) throw ParseError("config: field \"rays\" must be an object");
        check_fields(r, {"ray_count", "max_range"}, "rays.");
        cfg.ray_count = get_int(r, "ray_count", cfg.ray_count);
        cfg.max_range = get_number(r, "max_range", cfg.max_range);
    }

    if (auto it = j.find("net"); it != j.end()) {
        const json& n = *it;
        if (!n.is_object()) throw ParseError("config: field \"net\" must be an object");
        check_fields(n, {"hidden"}, "net.");
        if (auto h = n.find("hidden"); h != n.end()) {
            if (!h->is_array()) throw ParseError("config: field \"net.hidden\" must be an array");
            cfg.hidden.clear();
            for (const json& w : *h) {
                if (!w.is_number_integer())
                    throw ParseError("config: net.hidden entries must be integers");
                cfg.hidden.push_back(w.get<int>());
            }
        }
    }

    if (auto it = j.find("episode"); it != j.end()) {
        const json& e = *it;
        if (!e.is_object()) throw ParseError("config: field \"episode\" must be an object");
        check_fields(e,
                     {"dt", "max_time", "stall_window", "stall_min_progress", "angle_threshold"},
                     "episode.");
        cfg.episode.dt = get_number(e, "dt", cfg.episode.dt);
        cfg.episode.max_time = get_number(e, "max_time", cfg.episode.max_time);
        cfg.episode.stall_window = get_number(e, "stall_window", cfg.episode.stall_window);
        cfg.episode.stall_min_progress =
            get_number(e, "stall_min_progress", cfg.episode.stall_min_progress);
        cfg.episode.angle_threshold =
            get_number(e, "angle_threshold", cfg.episode.angle_threshold);
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::load_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    json j;
    try {
        j = json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw ParseError("config " + path.string() + ": " + e.what());
    }
    return from_json(j);
}

json ExperimentConfig::to_json() const {
    json j;
    j["track_path"] = track_path;
    j["seed"] = seed;
    j["max_generations"] = max_generations;
    j["out_dir"] = out_dir;
    j["ga"] = {{"population", ga.population},
               {"top_fraction", ga.top_fraction},
               {"crossover_rate", ga.crossover_rate},
               {"mutation_rate", ga.mutation_rate},
               {"mutation_range", ga.mutation_range},
               {"elitism", ga.elitism}};
    j["physics"] = {{"layout", layout_name(layout)},
                    {"mass", physics.mass},
                    {"yaw_inertia", physics.yaw_inertia},
                    {"lf", physics.lf},
                    {"lr", physics.lr},
                    {"cornering_stiffness_front", physics.cornering_stiffness_front},
                    {"cornering_stiffness_rear", physics.cornering_stiffness_rear},
                    {"friction_coeff", physics.friction_coeff},
                    {"max_drive_force", physics.max_drive_force},
                    {"max_brake_force", physics.max_brake_force},
                    {"max_steer", physics.max_steer},
                    {"drag_coeff", physics.drag_coeff},
                    {"rolling_resist", physics.rolling_resist},
                    {"max_speed", physics.max_speed},
                    {"footprint",
                     {{"length", physics.footprint.length}, {"width", physics.footprint.width}}}};
    j["rays"] = {{"ray_count", ray_count}, {"max_range", max_range}};
    j["net"] = {{"hidden", hidden}};
    j["episode"] = {{"dt", episode.dt},
                    {"max_time", episode.max_time},
                    {"stall_window", episode.stall_window},
                    {"stall_min_progress", episode.stall_min_progress},
                    {"angle_threshold", episode.angle_threshold}};
    return j;
}

EvolutionConfig ExperimentConfig::evolution_config() const {
    if (!seed_set) throw ValidationError("config: an explicit seed is required");
    EvolutionConfig evo;
    evo.ga = ga;
    evo.physics = physics;
    evo.rays = SensorConfig::evenly_spaced(ray_count, max_range);
    evo.net.input_size = ray_count + 2;
    evo.net.hidden = hidden;
    evo.episode = episode;
    evo.seed = seed;
    evo.max_generations = max_generations;
    evo.validate();
    return evo;
}

void ExperimentConfig::set_layout(Layout new_layout) {
    layout = new_layout;
    physics = resolve_physics(layout, physics_overrides);
}

std::uint64_t ExperimentConfig::config_hash(const Track& track) const {
    // out_dir and track_path are locations, not physics; keep them out of
    // the fingerprint so moving files around does not invalidate replays.
    json j = to_json();
    j.erase("out_dir");
    j.erase("track_path");
    std::uint64_t h = fnv1a64(j.dump());
    h = fnv1a64("\n", h);
    return fnv1a64(track.canonical_json(), h);
}

}  // namespace neuroevo
