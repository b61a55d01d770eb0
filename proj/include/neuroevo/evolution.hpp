#pragma once

#include <span>
#include <vector>

#include "neuroevo/brain.hpp"
#include "neuroevo/rng.hpp"

namespace neuroevo {

/// Genetic-algorithm knobs.
struct GaConfig {
    int population{50};
    double top_fraction{0.1};    // parents = ceil(top_fraction * population)
    double crossover_rate{0.8};  // per-weight probability of taking the averaged weight
    double mutation_rate{0.2};   // per-weight probability of uniform replacement
    double mutation_range{1.0};  // replacement drawn from [-range, range]
    bool elitism{true};          // child 0 is the unmutated crossover base

    int parent_count() const;
    void validate() const;
};

/// Relative fitness: scores normalized to sum to 1; uniform 1/p when every
/// score is zero. Throws ValidationError on a negative score.
std::vector<double> compute_fitness(std::span<const double> scores);

/// Indices of the n largest fitness values, descending, ties toward the
/// lower index.
std::vector<int> select_top(std::span<const double> fitness, int n);

/// Fitness-weighted arithmetic crossover. Fitness is renormalized over the
/// parents so each child weight is a convex combination of the parents'
/// weights at that index.
Genome crossover(std::span<const Genome> parents, std::span<const double> parent_fitness);

/// Per-weight uniform replacement with probability mutation_rate. Consumes
/// one Bernoulli draw per weight plus one value draw per replaced weight, in
/// index order.
Genome mutate(const Genome& genome, const GaConfig& cfg, RngStream& rng);

/// Breeds a full next generation: select parents, build the crossover base,
/// per-weight choose base vs fittest parent at crossover_rate, then mutate.
/// Child i draws from rng.fork(i), so results are schedule-independent.
std::vector<Genome> next_generation(std::span<const Genome> population,
                                    std::span<const double> scores, const GaConfig& cfg,
                                    RngStream& rng);

}  // namespace neuroevo
