#include "neuroevo/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <thread>

#include "neuroevo/error.hpp"

namespace neuroevo {

void EpisodeConfig::validate() const {
    if (!(dt > 0.0 && dt <= 0.05)) throw ValidationError("episode: dt must lie in (0, 0.05]");
    if (!(max_time > stall_window && stall_window > 0.0))
        throw ValidationError("episode: need max_time > stall_window > 0");
    if (!(stall_min_progress >= 0.0))
        throw ValidationError("episode: stall_min_progress must be non-negative");
    if (!(angle_threshold > 0.0 && angle_threshold < std::numbers::pi))
        throw ValidationError("episode: angle_threshold must lie in (0, pi)");
}

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Completed: return "Completed";
        case Outcome::Crashed: return "Crashed";
        case Outcome::Stalled: return "Stalled";
        case Outcome::TimedOut: return "TimedOut";
    }
    return "?";
}

double frame_score(const VehicleState& state, const CoursePose& course, double dt,
                   double angle_threshold) {
    assert(dt > 0.0);
    if (slip_angle(state) >= angle_threshold) return 0.0;
    const double along = state.world_velocity().dot(course.tangent);
    return along > 0.0 ? along * dt : 0.0;
}

namespace {

EpisodeTrace run_episode_impl(const Genome& genome, const Track& track,
                              const VehicleParams& params, const SensorConfig& sensors,
                              const EpisodeConfig& episode, bool keep_controls) {
    episode.validate();
    if (genome.topology.input_size != sensors.ray_count() + 2)
        throw ValidationError("sim: genome input size does not match sensor ray count + 2");
    if (genome.weights.size() != genome.topology.genome_length())
        throw ValidationError("sim: genome length does not match topology");

    EpisodeTrace trace;
    VehicleState state;
    state.position = track.start_position();
    state.yaw = track.start_yaw();

    const int window_frames = static_cast<int>(std::lround(episode.stall_window / episode.dt));
    std::vector<double> score_history;  // score after each frame
    double score = 0.0;
    int frames = 0;
    double final_s = track.course_pose(state.position).s;
    Outcome outcome = Outcome::TimedOut;

    while (true) {
        const SensorReading reading = sense(state, track, params, sensors);
        const Controls controls = to_controls(forward(genome, reading));
        if (keep_controls) trace.controls.push_back(controls);
        state = step(state, controls, params, episode.dt);
        ++frames;

        const CoursePose course = track.course_pose(state.position);
        score += frame_score(state, course, episode.dt, episode.angle_threshold);
        score_history.push_back(score);
        final_s = course.s;

        if (track.collides(state.position, state.yaw, params.footprint.length,
                           params.footprint.width)) {
            outcome = Outcome::Crashed;
            break;
        }
        if (course.s >= track.finish_s()) {
            outcome = Outcome::Completed;
            break;
        }
        if (frames >= window_frames) {
            const double before =
                frames == window_frames ? 0.0 : score_history[frames - window_frames - 1];
            if (score - before < episode.stall_min_progress) {
                outcome = Outcome::Stalled;
                break;
            }
        }
        if (frames * episode.dt >= episode.max_time) {
            outcome = Outcome::TimedOut;
            break;
        }
    }

    trace.result = {score, outcome, frames, final_s};
    return trace;
}

}  // namespace

EpisodeResult run_episode(const Genome& genome, const Track& track, const VehicleParams& params,
                          const SensorConfig& sensors, const EpisodeConfig& episode) {
    return run_episode_impl(genome, track, params, sensors, episode, false).result;
}

EpisodeTrace run_episode_traced(const Genome& genome, const Track& track,
                                const VehicleParams& params, const SensorConfig& sensors,
                                const EpisodeConfig& episode) {
    return run_episode_impl(genome, track, params, sensors, episode, true);
}

void EvolutionConfig::validate() const {
    ga.validate();
    physics.validate();
    rays.validate();
    net.validate();
    episode.validate();
    if (net.input_size != rays.ray_count() + 2)
        throw ValidationError("net: input_size must equal ray_count + 2");
    if (max_generations < 0)
        throw ValidationError("max_generations must be non-negative");
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("NEUROEVO_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

// Runs fn(i) for i in [0, n) on `threads` workers. Work-stealing order is
// nondeterministic but every result lands at its own index.
void parallel_for_index(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers_n = std::min(static_cast<std::size_t>(std::max(threads, 1)), n);
    if (workers_n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(workers_n);
    for (std::size_t t = 0; t < workers_n; ++t) {
        workers.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& w : workers) w.join();
}

}  // namespace

RunResult run_evolution(const Track& track, const EvolutionConfig& cfg, int threads) {
    cfg.validate();
    threads = resolve_threads(threads);
    const RngStream master(cfg.seed);
    const std::size_t p = static_cast<std::size_t>(cfg.ga.population);

    RunResult run;
    std::vector<Genome> population;
    population.reserve(p);
    RngStream init_rng = master.fork(0);
    for (std::size_t i = 0; i < p; ++i) {
        RngStream individual = init_rng.fork(i);
        population.push_back(random_genome(cfg.net, individual));
    }

    int consecutive_completions = 0;
    for (int gen = 0; gen < cfg.max_generations; ++gen) {
        std::vector<EpisodeResult> results(p);
        parallel_for_index(p, threads, [&](std::size_t i) {
            results[i] = run_episode(population[i], track, cfg.physics, cfg.rays, cfg.episode);
        });

        GenerationStats stats;
        stats.generation = gen;
        std::vector<double> scores(p);
        for (std::size_t i = 0; i < p; ++i) {
            scores[i] = results[i].score;
            switch (results[i].outcome) {
                case Outcome::Completed: ++stats.completions; break;
                case Outcome::Crashed: ++stats.crashes; break;
                case Outcome::Stalled: ++stats.stalls; break;
                case Outcome::TimedOut: ++stats.timeouts; break;
            }
            if (scores[i] > scores[stats.best_genome_id]) stats.best_genome_id = static_cast<int>(i);
        }
        std::vector<double> sorted = scores;
        std::sort(sorted.begin(), sorted.end());
        stats.best_score = sorted.back();
        stats.mean_score = 0.0;
        for (double s : scores) stats.mean_score += s;
        stats.mean_score /= static_cast<double>(p);
        stats.median_score = p % 2 == 1 ? sorted[p / 2]
                                        : 0.5 * (sorted[p / 2 - 1] + sorted[p / 2]);
        run.stats.push_back(stats);
        run.best_per_generation.push_back(population[stats.best_genome_id]);

        consecutive_completions = stats.completions > 0 ? consecutive_completions + 1 : 0;
        if (consecutive_completions >= 3) {
            run.generations_to_success = gen + 1;
            break;
        }
        if (gen + 1 < cfg.max_generations) {
            RngStream gen_rng = master.fork(static_cast<std::uint64_t>(gen) + 1);
            population = next_generation(population, scores, cfg.ga, gen_rng);
        }
    }

    run.final_population = std::move(population);
    if (!run.best_per_generation.empty())
        run.final_best = run_episode_traced(run.best_per_generation.back(), track, cfg.physics,
                                            cfg.rays, cfg.episode);
    return run;
}

}  // namespace neuroevo
