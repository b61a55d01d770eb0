#pragma once

#include <filesystem>
#include <vector>

#include "neuroevo/config.hpp"
#include "neuroevo/sim.hpp"

namespace neuroevo {

void write_stats_csv(const std::filesystem::path& path,
                     const std::vector<GenerationStats>& stats);

/// Executes one seeded run and writes stats.csv, best.replay and
/// effective_config into cfg.out_dir. Returns the process exit code:
/// 0 when the success criterion fired, 2 when max_generations ran out.
int execute_run(const ExperimentConfig& cfg, const Track& track, RunResult* out_result = nullptr,
                int threads = 0);

/// Table-style experiment grid; the cross product of all four axes is run.
struct SweepGrid {
    std::vector<Layout> layouts{Layout::FF, Layout::FR};
    std::vector<double> crossover_rates{0.8, 0.9};
    std::vector<double> mutation_rates{0.1, 0.2};
    std::vector<std::uint64_t> seeds;
};

/// Runs every grid cell into its own subdirectory of base.out_dir and writes
/// sweep.csv. Cell failures are recorded as rows, not propagated.
int execute_sweep(const ExperimentConfig& base, const SweepGrid& grid, int threads = 0);

/// Re-simulates the final best episode of a replay file against a track.
/// Prints score and outcome; returns 0 only on a bit-exact match.
int execute_replay(const std::filesystem::path& replay_path,
                   const std::filesystem::path& track_path, int threads = 0);

}  // namespace neuroevo
