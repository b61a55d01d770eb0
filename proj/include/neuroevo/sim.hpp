#pragma once

#include <cstdint>
#include <numbers>
#include <vector>

#include "neuroevo/brain.hpp"
#include "neuroevo/evolution.hpp"
#include "neuroevo/sensors.hpp"
#include "neuroevo/track.hpp"
#include "neuroevo/vehicle.hpp"

namespace neuroevo {

/// Per-episode limits and despawn thresholds.
struct EpisodeConfig {
    double dt{1.0 / 60.0};
    double max_time{60.0};
    double stall_window{5.0};        // trailing window for the stagnation check
    double stall_min_progress{2.0};  // minimum score gain per window, meters
    double angle_threshold{10.0 * std::numbers::pi / 180.0};

    void validate() const;
};

enum class Outcome : std::uint8_t { Completed = 0, Crashed = 1, Stalled = 2, TimedOut = 3 };

const char* outcome_name(Outcome o);

struct EpisodeResult {
    double score{0.0};  // accumulated gated course-direction distance, meters
    Outcome outcome{Outcome::TimedOut};
    int frames{0};
    double final_s{0.0};
};

/// Episode result plus the control trace, enough to replay frame by frame.
struct EpisodeTrace {
    EpisodeResult result;
    std::vector<Controls> controls;
};

/// Distance credited for one frame: the course-tangent velocity component
/// times dt, but only while the slip angle stays under angle_threshold and
/// the vehicle moves with the course. Negative progress is never credited.
double frame_score(const VehicleState& state, const CoursePose& course, double dt,
                   double angle_threshold);

/// Runs one vehicle from the track start until it crashes, finishes, stalls
/// or times out. Deterministic for fixed inputs.
EpisodeResult run_episode(const Genome& genome, const Track& track, const VehicleParams& params,
                          const SensorConfig& sensors, const EpisodeConfig& episode);

EpisodeTrace run_episode_traced(const Genome& genome, const Track& track,
                                const VehicleParams& params, const SensorConfig& sensors,
                                const EpisodeConfig& episode);

/// Per-generation aggregates, one CSV row each.
struct GenerationStats {
    int generation{0};
    double best_score{0.0};
    double mean_score{0.0};
    double median_score{0.0};
    int completions{0};
    int crashes{0};
    int stalls{0};
    int timeouts{0};
    int best_genome_id{0};
};

/// Everything a seeded evolution run needs.
struct EvolutionConfig {
    GaConfig ga{};
    VehicleParams physics{};
    SensorConfig rays{SensorConfig::evenly_spaced(12)};
    Topology net{};
    EpisodeConfig episode{};
    std::uint64_t seed{0};
    int max_generations{60};

    void validate() const;
};

struct RunResult {
    std::vector<GenerationStats> stats;
    std::vector<Genome> best_per_generation;
    std::vector<Genome> final_population;
    EpisodeTrace final_best;         // traced episode of the last generation's best genome
    int generations_to_success{-1};  // generations executed when the success rule fired

    bool success() const { return generations_to_success >= 0; }
};

/// Number of worker threads: `requested` if positive, else NEUROEVO_THREADS,
/// else the hardware count.
int resolve_threads(int requested = 0);

/// Seeded evolution loop. Success is one Completed outcome in each of three
/// consecutive generations. Results are bit-identical for a fixed config and
/// seed regardless of `threads`.
RunResult run_evolution(const Track& track, const EvolutionConfig& cfg, int threads = 0);

}  // namespace neuroevo
