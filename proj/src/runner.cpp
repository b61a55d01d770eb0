#include "neuroevo/runner.hpp"

#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include "neuroevo/error.hpp"
#include "neuroevo/replay.hpp"
#include "neuroevo/util.hpp"

namespace neuroevo {

namespace fs = std::filesystem;

namespace {

bool bits_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
}

std::string sweep_cell_tag(Layout layout, double cr, double mr, std::uint64_t seed) {
    std::ostringstream tag;
    tag << layout_name(layout) << "_cr" << format_double(cr) << "_mr" << format_double(mr)
        << "_seed" << seed;
    return tag.str();
}

}  // namespace

void write_stats_csv(const fs::path& path, const std::vector<GenerationStats>& stats) {
    std::ostringstream out;
    out << "generation,best_score,mean_score,median_score,completions,crashes,stalls,timeouts\n";
    for (const GenerationStats& s : stats) {
        out << s.generation << ',' << format_double(s.best_score) << ','
            << format_double(s.mean_score) << ',' << format_double(s.median_score) << ','
            << s.completions << ',' << s.crashes << ',' << s.stalls << ',' << s.timeouts << '\n';
    }
    write_text(path, out.str());
}

int execute_run(const ExperimentConfig& cfg, const Track& track, RunResult* out_result,
                int threads) {
    const EvolutionConfig evo = cfg.evolution_config();
    const fs::path out_dir(cfg.out_dir);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir.string());

    write_text(out_dir / "effective_config", cfg.to_json().dump(2) + "\n");

    RunResult result = run_evolution(track, evo, threads);
    write_stats_csv(out_dir / "stats.csv", result.stats);

    ReplayData replay;
    replay.seed = cfg.seed;
    replay.config_hash = cfg.config_hash(track);
    // keep the replay byte-identical regardless of where outputs land
    nlohmann::json embedded = cfg.to_json();
    embedded.erase("out_dir");
    embedded.erase("track_path");
    replay.config_json = embedded.dump();
    for (const Genome& g : result.best_per_generation) replay.best_genomes.push_back(g.weights);
    replay.controls = result.final_best.controls;
    replay.score = result.final_best.result.score;
    replay.outcome = result.final_best.result.outcome;
    replay.final_s = result.final_best.result.final_s;
    write_replay(out_dir / "best.replay", replay);

    const int code = result.success() ? 0 : 2;
    if (out_result) *out_result = std::move(result);
    return code;
}

int execute_sweep(const ExperimentConfig& base, const SweepGrid& grid, int threads) {
    const fs::path out_dir(base.out_dir);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir.string());

    std::ostringstream csv;
    csv << "layout,crossover_rate,mutation_rate,seed,generations_to_success,total_individuals\n";
    for (Layout layout : grid.layouts) {
        for (double cr : grid.crossover_rates) {
            for (double mr : grid.mutation_rates) {
                for (std::uint64_t seed : grid.seeds) {
                    ExperimentConfig cell = base;
                    cell.set_layout(layout);
                    cell.ga.crossover_rate = cr;
                    cell.ga.mutation_rate = mr;
                    cell.seed = seed;
                    cell.seed_set = true;
                    cell.out_dir =
                        (out_dir / sweep_cell_tag(layout, cr, mr, seed)).string();

                    int generations_to_success = -1;
                    long total_individuals = 0;
                    try {
                        RunResult result;
                        execute_run(cell, Track::load_file(cell.track_path), &result, threads);
                        generations_to_success = result.generations_to_success;
                        total_individuals =
                            static_cast<long>(result.stats.size()) * cell.ga.population;
                    } catch (const std::exception& e) {
                        std::cerr << "sweep cell " << sweep_cell_tag(layout, cr, mr, seed)
                                  << " failed: " << e.what() << "\n";
                    }
                    csv << layout_name(layout) << ',' << format_double(cr) << ','
                        << format_double(mr) << ',' << seed << ',' << generations_to_success
                        << ',' << total_individuals << '\n';
                }
            }
        }
    }
    write_text(out_dir / "sweep.csv", csv.str());
    return 0;
}

int execute_replay(const fs::path& replay_path, const fs::path& track_path, int threads) {
    (void)threads;
    const ReplayData data = read_replay(replay_path);
    const Track track = Track::load_file(track_path);

    nlohmann::json cfg_json;
    try {
        cfg_json = nlohmann::json::parse(data.config_json);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("replay: embedded config: ") + e.what());
    }
    const ExperimentConfig cfg = ExperimentConfig::from_json(cfg_json);
    if (cfg.config_hash(track) != data.config_hash) {
        std::cerr << "replay: config hash mismatch: this replay was not produced by the given "
                     "track and config\n";
        return 1;
    }
    if (data.best_genomes.empty()) {
        std::cerr << "replay: file records zero generations, nothing to re-simulate\n";
        return 1;
    }

    const EvolutionConfig evo = cfg.evolution_config();
    Genome genome;
    genome.topology = evo.net;
    genome.weights = data.best_genomes.back();
    if (genome.weights.size() != genome.topology.genome_length())
        throw ValidationError("replay: genome length does not match embedded topology");

    const EpisodeTrace trace =
        run_episode_traced(genome, track, evo.physics, evo.rays, evo.episode);

    bool match = bits_equal(trace.result.score, data.score) &&
                 trace.result.outcome == data.outcome &&
                 bits_equal(trace.result.final_s, data.final_s) &&
                 trace.controls.size() == data.controls.size();
    if (match) {
        for (std::size_t i = 0; i < trace.controls.size(); ++i) {
            if (!bits_equal(trace.controls[i].throttle, data.controls[i].throttle) ||
                !bits_equal(trace.controls[i].brake, data.controls[i].brake) ||
                !bits_equal(trace.controls[i].steer, data.controls[i].steer)) {
                match = false;
                break;
            }
        }
    }

    std::cout << "score " << format_double(trace.result.score) << " outcome "
              << outcome_name(trace.result.outcome) << " frames " << trace.result.frames
              << (match ? " (matches recording)" : " (MISMATCH against recording)") << "\n";
    return match ? 0 : 1;
}

}  // namespace neuroevo
