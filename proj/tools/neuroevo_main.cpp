#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "neuroevo/config.hpp"
#include "neuroevo/error.hpp"
#include "neuroevo/runner.hpp"
#include "neuroevo/util.hpp"

namespace {

using neuroevo::ExperimentConfig;
using nlohmann::json;

// Flag overrides accumulate into a JSON patch that wins over the config file.
struct OverridePatch {
    json value = json::object();

    void set(const json::json_pointer& where, json v) { value[where] = std::move(v); }
};

void add_double_override(CLI::App* cmd, OverridePatch& patch, const std::string& flag,
                         const std::string& pointer, const std::string& help) {
    json::json_pointer where(pointer);
    cmd->add_option_function<double>(
        flag, [&patch, where](const double& v) { patch.set(where, v); }, help);
}

void add_int_override(CLI::App* cmd, OverridePatch& patch, const std::string& flag,
                      const std::string& pointer, const std::string& help) {
    json::json_pointer where(pointer);
    cmd->add_option_function<int>(
        flag, [&patch, where](const int& v) { patch.set(where, v); }, help);
}

void add_bool_override(CLI::App* cmd, OverridePatch& patch, const std::string& flag,
                       const std::string& pointer, const std::string& help) {
    json::json_pointer where(pointer);
    cmd->add_option_function<bool>(
        flag, [&patch, where](const bool& v) { patch.set(where, v); }, help);
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

/// Shared experiment options for `run` and `sweep`.
struct ExperimentCli {
    std::string config_path;
    OverridePatch patch;
    int threads = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "experiment config file (JSON)")->required();
        cmd->add_option_function<std::string>(
            "--track", [this](const std::string& v) { patch.set(json::json_pointer("/track_path"), v); },
            "track file, overrides track_path");
        cmd->add_option_function<std::uint64_t>(
            "--seed", [this](const std::uint64_t& v) { patch.set(json::json_pointer("/seed"), v); },
            "run seed, overrides the config");
        cmd->add_option_function<std::string>(
            "--out", [this](const std::string& v) { patch.set(json::json_pointer("/out_dir"), v); },
            "output directory, overrides out_dir");
        add_int_override(cmd, patch, "--max-generations", "/max_generations", "generation cap");
        cmd->add_option("--threads", threads, "evaluator threads (0 = NEUROEVO_THREADS or all)");

        add_int_override(cmd, patch, "--ga.population", "/ga/population", "population size");
        add_double_override(cmd, patch, "--ga.top-fraction", "/ga/top_fraction",
                            "selected parent fraction");
        add_double_override(cmd, patch, "--ga.crossover-rate", "/ga/crossover_rate",
                            "per-weight crossover rate");
        add_double_override(cmd, patch, "--ga.mutation-rate", "/ga/mutation_rate",
                            "per-weight mutation rate");
        add_double_override(cmd, patch, "--ga.mutation-range", "/ga/mutation_range",
                            "mutation replacement range");
        add_bool_override(cmd, patch, "--ga.elitism", "/ga/elitism",
                          "carry the unmutated crossover base");

        cmd->add_option_function<std::string>(
            "--physics.layout",
            [this](const std::string& v) { patch.set(json::json_pointer("/physics/layout"), v); },
            "drivetrain layout: FF or FR");
        add_double_override(cmd, patch, "--physics.mass", "/physics/mass", "vehicle mass, kg");
        add_double_override(cmd, patch, "--physics.yaw-inertia", "/physics/yaw_inertia",
                            "yaw inertia, kg m^2");
        add_double_override(cmd, patch, "--physics.lf", "/physics/lf", "CoG to front axle, m");
        add_double_override(cmd, patch, "--physics.lr", "/physics/lr", "CoG to rear axle, m");
        add_double_override(cmd, patch, "--physics.cornering-stiffness-front",
                            "/physics/cornering_stiffness_front", "front stiffness, N/rad");
        add_double_override(cmd, patch, "--physics.cornering-stiffness-rear",
                            "/physics/cornering_stiffness_rear", "rear stiffness, N/rad");
        add_double_override(cmd, patch, "--physics.friction-coeff", "/physics/friction_coeff",
                            "tire friction coefficient");
        add_double_override(cmd, patch, "--physics.max-drive-force", "/physics/max_drive_force",
                            "drive force cap, N");
        add_double_override(cmd, patch, "--physics.max-brake-force", "/physics/max_brake_force",
                            "brake force cap, N");
        add_double_override(cmd, patch, "--physics.max-steer", "/physics/max_steer",
                            "steering angle cap, rad");
        add_double_override(cmd, patch, "--physics.drag-coeff", "/physics/drag_coeff",
                            "aero drag coefficient, N s^2/m^2");
        add_double_override(cmd, patch, "--physics.rolling-resist", "/physics/rolling_resist",
                            "rolling resistance, N s/m");
        add_double_override(cmd, patch, "--physics.max-speed", "/physics/max_speed",
                            "speed normalization constant, m/s");
        add_double_override(cmd, patch, "--physics.footprint.length",
                            "/physics/footprint/length", "collision footprint length, m");
        add_double_override(cmd, patch, "--physics.footprint.width", "/physics/footprint/width",
                            "collision footprint width, m");

        add_int_override(cmd, patch, "--rays.ray-count", "/rays/ray_count", "sensor ray count");
        add_double_override(cmd, patch, "--rays.max-range", "/rays/max_range",
                            "sensor range, m");
        cmd->add_option_function<std::string>(
            "--net.hidden",
            [this](const std::string& v) {
                json widths = json::array();
                for (const std::string& part : split_commas(v))
                    widths.push_back(std::stoi(part));
                patch.set(json::json_pointer("/net/hidden"), widths);
            },
            "hidden layer widths, comma separated");

        add_double_override(cmd, patch, "--episode.dt", "/episode/dt", "physics step, s");
        add_double_override(cmd, patch, "--episode.max-time", "/episode/max_time",
                            "episode time cap, s");
        add_double_override(cmd, patch, "--episode.stall-window", "/episode/stall_window",
                            "stagnation window, s");
        add_double_override(cmd, patch, "--episode.stall-min-progress",
                            "/episode/stall_min_progress", "minimum score gain per window, m");
        add_double_override(cmd, patch, "--episode.angle-threshold", "/episode/angle_threshold",
                            "scoring slip gate, rad");
    }

    ExperimentConfig load() const {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) throw neuroevo::IoError("cannot read config file " + config_path);
        std::ostringstream buf;
        buf << in.rdbuf();
        json file_json;
        try {
            file_json = json::parse(buf.str());
        } catch (const json::parse_error& e) {
            throw neuroevo::ParseError("config " + config_path + ": " + e.what());
        }
        file_json.merge_patch(patch.value);
        return ExperimentConfig::from_json(file_json);
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic neuroevolution driving experiments"};
    app.require_subcommand(1);

    CLI::App* run_cmd = app.add_subcommand("run", "run one seeded evolution experiment");
    ExperimentCli run_cli;
    run_cli.attach(run_cmd);

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a layout x rate x seed grid");
    ExperimentCli sweep_cli;
    sweep_cli.attach(sweep_cmd);
    std::string grid_layouts = "FF,FR";
    std::string grid_crossover = "0.8,0.9";
    std::string grid_mutation = "0.1,0.2";
    std::string grid_seeds;
    sweep_cmd->add_option("--grid.layouts", grid_layouts, "layouts, comma separated");
    sweep_cmd->add_option("--grid.crossover-rates", grid_crossover,
                          "crossover rates, comma separated");
    sweep_cmd->add_option("--grid.mutation-rates", grid_mutation,
                          "mutation rates, comma separated");
    sweep_cmd->add_option("--grid.seeds", grid_seeds,
                          "seeds, comma separated (default: the base seed)");

    CLI::App* replay_cmd = app.add_subcommand("replay", "re-simulate a recorded best episode");
    std::string replay_path, replay_track;
    replay_cmd->add_option("replay_file", replay_path, "replay file to verify")->required();
    replay_cmd->add_option("track_file", replay_track, "track the run used")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run_cmd->parsed()) {
            const ExperimentConfig cfg = run_cli.load();
            const neuroevo::Track track = neuroevo::Track::load_file(cfg.track_path);
            neuroevo::RunResult result;
            const int code = neuroevo::execute_run(cfg, track, &result, run_cli.threads);
            const auto& stats = result.stats;
            std::cout << "generations " << stats.size() << " success "
                      << (result.success() ? "yes" : "no");
            if (!stats.empty())
                std::cout << " best_score " << neuroevo::format_double(stats.back().best_score);
            std::cout << " out " << cfg.out_dir << "\n";
            return code;
        }
        if (sweep_cmd->parsed()) {
            const ExperimentConfig base = sweep_cli.load();
            neuroevo::SweepGrid grid;
            grid.layouts.clear();
            for (const std::string& l : split_commas(grid_layouts))
                grid.layouts.push_back(neuroevo::parse_layout(l));
            grid.crossover_rates.clear();
            for (const std::string& r : split_commas(grid_crossover))
                grid.crossover_rates.push_back(std::stod(r));
            grid.mutation_rates.clear();
            for (const std::string& r : split_commas(grid_mutation))
                grid.mutation_rates.push_back(std::stod(r));
            if (grid_seeds.empty()) {
                if (!base.seed_set)
                    throw neuroevo::ValidationError("sweep: need --grid.seeds or a base seed");
                grid.seeds = {base.seed};
            } else {
                for (const std::string& s : split_commas(grid_seeds))
                    grid.seeds.push_back(std::stoull(s));
            }
            return neuroevo::execute_sweep(base, grid, sweep_cli.threads);
        }
        return neuroevo::execute_replay(replay_path, replay_track);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
